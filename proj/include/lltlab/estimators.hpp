#pragma once

#include "lltlab/csv.hpp"
#include "lltlab/empirical.hpp"
#include "lltlab/ergodic.hpp"
#include "lltlab/first_passage_mc.hpp"
#include "lltlab/llt_report.hpp"
#include "lltlab/scan.hpp"
#include "lltlab/statistics.hpp"
