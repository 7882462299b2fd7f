#pragma once

#include "hypertda/community.hpp"
#include "hypertda/curve.hpp"
#include "hypertda/filtration.hpp"
#include "hypertda/generators.hpp"
#include "hypertda/geometry.hpp"
#include "hypertda/hypergraph.hpp"
#include "hypertda/interpolation.hpp"
#include "hypertda/io.hpp"
#include "hypertda/linprog.hpp"
#include "hypertda/persistence.hpp"
#include "hypertda/pipeline.hpp"
#include "hypertda/random_curves.hpp"
#include "hypertda/stats.hpp"
