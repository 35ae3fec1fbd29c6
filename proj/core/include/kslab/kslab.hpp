#pragma once

#include "kslab/apriori.hpp"
#include "kslab/diagnostics.hpp"
#include "kslab/equi.hpp"
#include "kslab/error.hpp"
#include "kslab/exponents.hpp"
#include "kslab/extension.hpp"
#include "kslab/field.hpp"
#include "kslab/grid.hpp"
#include "kslab/interpolation.hpp"
#include "kslab/parallel.hpp"
#include "kslab/random.hpp"
#include "kslab/rational.hpp"
#include "kslab/snapshot.hpp"
#include "kslab/solver.hpp"
#include "kslab/summation.hpp"
