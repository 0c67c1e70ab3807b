// Everything in one include.
#pragma once

#include "singlip/error.hpp"
#include "singlip/rational.hpp"
#include "singlip/graph.hpp"
#include "singlip/graph_io.hpp"
#include "singlip/cycles.hpp"
#include "singlip/minimality.hpp"
#include "singlip/pieces.hpp"
#include "singlip/decomposition.hpp"
#include "singlip/puiseux.hpp"
#include "singlip/plane_curves.hpp"
#include "singlip/dot.hpp"
