#pragma once

#include "k3cov/exactmath/rational.hpp"
#include "k3cov/exactmath/cyc12.hpp"
#include "k3cov/exactmath/matrix.hpp"
#include "k3cov/exactmath/smith.hpp"
#include "k3cov/exactmath/poly.hpp"
#include "k3cov/exactmath/upoly.hpp"
#include "k3cov/exactmath/ratfunc.hpp"
#include "k3cov/exactmath/square.hpp"
#include "k3cov/exactmath/expr.hpp"
#include "k3cov/exactmath/funcfield.hpp"
