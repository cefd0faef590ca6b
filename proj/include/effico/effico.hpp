// SPDX-License-Identifier: MIT
#pragma once

#include "effico/distribution.hpp"
#include "effico/efficiency.hpp"
#include "effico/error.hpp"
#include "effico/lp.hpp"
#include "effico/market.hpp"
#include "effico/normal.hpp"
#include "effico/quadrature.hpp"
#include "effico/roots.hpp"
#include "effico/scalar.hpp"
#include "effico/solution.hpp"
#include "effico/stochvol.hpp"
#include "effico/three_state.hpp"
#include "effico/utility.hpp"
