#pragma once

#include "rys/errors.hpp"
#include "rys/flows.hpp"
#include "rys/moments.hpp"
#include "rys/polynomials.hpp"
#include "rys/quadrature.hpp"
#include "rys/recurrence.hpp"
#include "rys/special.hpp"
#include "rys/tanh_sinh.hpp"
#include "rys/weight.hpp"
#include "rys/xreal.hpp"
#include "rys/zeros.hpp"
