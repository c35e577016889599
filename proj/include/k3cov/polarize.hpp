#pragma once

#include "k3cov/polarize/builders.hpp"
#include "k3cov/polarize/checklist.hpp"
#include "k3cov/polarize/witness.hpp"
