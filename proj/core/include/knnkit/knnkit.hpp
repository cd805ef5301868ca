#pragma once

#include "knnkit/bench.hpp"
#include "knnkit/bruteforce.hpp"
#include "knnkit/clustering.hpp"
#include "knnkit/core.hpp"
#include "knnkit/dataset.hpp"
#include "knnkit/error.hpp"
#include "knnkit/generate.hpp"
#include "knnkit/kdtree.hpp"
#include "knnkit/points_io.hpp"
