// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_KRYLOV_HPP
#define KRYLOV_KRYLOV_HPP

#include "chebyshev.hpp"
#include "core_linalg.hpp"
#include "krylov_nonsymmetric.hpp"
#include "krylov_spd.hpp"
#include "krylov_symmetric.hpp"
#include "matrix_market.hpp"
#include "preconditioners.hpp"
#include "problems.hpp"
#include "solve_report.hpp"
#include "sparse_storage.hpp"
#include "stationary.hpp"

#endif
