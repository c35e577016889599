#pragma once

#include "k3cov/lattices/lattice.hpp"
#include "k3cov/lattices/discriminant.hpp"
#include "k3cov/lattices/operations.hpp"
#include "k3cov/lattices/enumerate.hpp"
#include "k3cov/lattices/roots.hpp"
#include "k3cov/lattices/isometry.hpp"
#include "k3cov/lattices/constructions.hpp"
