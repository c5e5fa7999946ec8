// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "satgw/approx.hpp"
#include "satgw/bench.hpp"
#include "satgw/common.hpp"
#include "satgw/experiments.hpp"
#include "satgw/io.hpp"
#include "satgw/math.hpp"
#include "satgw/oracle.hpp"
#include "satgw/pbd.hpp"
#include "satgw/rng.hpp"
#include "satgw/sgd.hpp"
#include "satgw/types.hpp"
