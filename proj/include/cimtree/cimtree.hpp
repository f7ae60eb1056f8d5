#pragma once

// Everything in one include.

#include "cimtree/data_io.hpp"
#include "cimtree/edge_list_io.hpp"
#include "cimtree/enumerate.hpp"
#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"
#include "cimtree/imset.hpp"
#include "cimtree/learn.hpp"
#include "cimtree/lp.hpp"
#include "cimtree/moves.hpp"
#include "cimtree/polytope.hpp"
#include "cimtree/report.hpp"
#include "cimtree/rng.hpp"
#include "cimtree/score.hpp"
#include "cimtree/sim.hpp"
#include "cimtree/verify.hpp"
