#pragma once

#include "ring.hpp"
#include "series.hpp"
#include "combinat.hpp"
#include "gfun.hpp"
#include "coeff.hpp"
#include "pfaff.hpp"
#include "fermion.hpp"
#include "report.hpp"
#include "conjecture.hpp"
#include "suites.hpp"
#include "stability.hpp"
