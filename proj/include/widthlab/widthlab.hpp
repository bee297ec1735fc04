#pragma once

#include "widthlab/ball_model.hpp"
#include "widthlab/certified_lower.hpp"
#include "widthlab/dual_norm.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"
#include "widthlab/io.hpp"
#include "widthlab/lp_norm.hpp"
#include "widthlab/norms.hpp"
#include "widthlab/oracle.hpp"
#include "widthlab/order_formulas.hpp"
#include "widthlab/sobolev.hpp"
#include "widthlab/verification.hpp"
