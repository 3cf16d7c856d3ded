#pragma once

#include "lltlab/absorption.hpp"
#include "lltlab/block_chain.hpp"
#include "lltlab/identities.hpp"
#include "lltlab/llt_table.hpp"
#include "lltlab/markov_source.hpp"
#include "lltlab/pattern.hpp"
#include "lltlab/pattern_solver.hpp"
#include "lltlab/pruned_target.hpp"
