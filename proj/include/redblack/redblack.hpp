#pragma once

#include "redblack/check_report.hpp"
#include "redblack/equilibrium.hpp"
#include "redblack/families.hpp"
#include "redblack/game.hpp"
#include "redblack/inequalities.hpp"
#include "redblack/monte_carlo.hpp"
