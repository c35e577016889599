#pragma once

#include "k3cov/quadforms/form.hpp"
#include "k3cov/quadforms/represent.hpp"
