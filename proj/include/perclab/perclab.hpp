#pragma once

#include "perclab/edge_list_io.hpp"
#include "perclab/expansion.hpp"
#include "perclab/experiment.hpp"
#include "perclab/generators.hpp"
#include "perclab/graph.hpp"
#include "perclab/percolation.hpp"
#include "perclab/prob.hpp"
#include "perclab/rng.hpp"
#include "perclab/spectral.hpp"
#include "perclab/structure.hpp"
#include "perclab/trees.hpp"
