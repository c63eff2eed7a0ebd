#pragma once

#include "bounds.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "optimizer.hpp"
#include "probability.hpp"
#include "spin_half.hpp"
#include "state.hpp"
