#pragma once

#include "numdim/decimal.hpp"
#include "numdim/dynamics.hpp"
#include "numdim/errors.hpp"
#include "numdim/lattice.hpp"
#include "numdim/numerical_dimension.hpp"
#include "numdim/qfield.hpp"
#include "numdim/report.hpp"
#include "numdim/sections.hpp"
