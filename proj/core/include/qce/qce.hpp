#pragma once

#include "qce/cycle.hpp"
#include "qce/error.hpp"
#include "qce/level_expr.hpp"
#include "qce/optimizer.hpp"
#include "qce/perturbation.hpp"
#include "qce/spectrum.hpp"
#include "qce/thermo.hpp"
