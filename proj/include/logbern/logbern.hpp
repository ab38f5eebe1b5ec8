#pragma once

#include "logbern/analysis.hpp"
#include "logbern/bernstein_basis.hpp"
#include "logbern/denoise.hpp"
#include "logbern/errors.hpp"
#include "logbern/functions.hpp"
#include "logbern/io.hpp"
#include "logbern/operators.hpp"
#include "logbern/quadrature.hpp"
#include "logbern/shape.hpp"
#include "logbern/summation.hpp"
#include "logbern/verify.hpp"
#include "logbern/warp.hpp"
