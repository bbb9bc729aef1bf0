#pragma once

#include "rainbow/auxiliary.hpp"
#include "rainbow/bigcount.hpp"
#include "rainbow/catalogue.hpp"
#include "rainbow/colouring.hpp"
#include "rainbow/conflict.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extract.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graph_io.hpp"
#include "rainbow/homcount.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/search.hpp"
