#pragma once

#include "errors.hpp"
#include "matrix.hpp"
#include "model.hpp"
#include "linsys.hpp"
#include "response.hpp"
#include "steadystate.hpp"
#include "sweep.hpp"
#include "optimize.hpp"
