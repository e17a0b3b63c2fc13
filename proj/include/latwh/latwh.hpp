// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "latwh/error.hpp"
#include "latwh/lattice_core.hpp"
#include "latwh/dispersion.hpp"
#include "latwh/wh_catalog.hpp"
#include "latwh/spectral.hpp"
#include "latwh/wh_solver.hpp"
#include "latwh/direct_oracle.hpp"
#include "latwh/fem_appendix.hpp"
#include "latwh/io.hpp"
