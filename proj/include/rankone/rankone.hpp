#pragma once

#include "rankone/cli.hpp"
#include "rankone/criteria.hpp"
#include "rankone/energy.hpp"
#include "rankone/energy_file.hpp"
#include "rankone/error.hpp"
#include "rankone/expr.hpp"
#include "rankone/grid.hpp"
#include "rankone/jet.hpp"
#include "rankone/mat2.hpp"
#include "rankone/oracle.hpp"
#include "rankone/report.hpp"
#include "rankone/scalar_inf.hpp"
#include "rankone/scan.hpp"
#include "rankone/stress.hpp"
