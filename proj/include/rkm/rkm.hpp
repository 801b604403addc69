#pragma once

#include "rkm/experiments.hpp"
#include "rkm/krylov.hpp"
#include "rkm/matfun.hpp"
#include "rkm/operators.hpp"
#include "rkm/reference.hpp"
#include "rkm/smoothing.hpp"
#include "rkm/verify.hpp"

namespace rkm {
inline constexpr const char* kVersion = "0.1.0";
}
