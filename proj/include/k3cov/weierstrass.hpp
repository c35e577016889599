#pragma once

#include "k3cov/weierstrass/model.hpp"
#include "k3cov/weierstrass/analysis.hpp"
#include "k3cov/weierstrass/curves.hpp"
#include "k3cov/weierstrass/export.hpp"
