#pragma once

#include "wallach/exactnum/bigrational.hpp"
#include "wallach/exactnum/interval.hpp"
#include "wallach/exactnum/polynomial.hpp"
#include "wallach/exactnum/quadext.hpp"
#include "wallach/exactnum/resultant.hpp"
#include "wallach/exactnum/sturm.hpp"
