#pragma once

#include "tss/algebra.hpp"
#include "tss/block_layout.hpp"
#include "tss/construct.hpp"
#include "tss/errors.hpp"
#include "tss/generate.hpp"
#include "tss/graph_matrix.hpp"
#include "tss/io.hpp"
#include "tss/lowrank.hpp"
#include "tss/matvec.hpp"
#include "tss/rank_profile.hpp"
#include "tss/rng.hpp"
#include "tss/solve.hpp"
#include "tss/tree.hpp"
#include "tss/tss_matrix.hpp"
