#pragma once

#include "k3cov/ellk3/divisor.hpp"
#include "k3cov/ellk3/heights.hpp"
#include "k3cov/ellk3/model.hpp"
#include "k3cov/ellk3/ns.hpp"
