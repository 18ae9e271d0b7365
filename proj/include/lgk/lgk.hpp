#pragma once

#include "lgk/error.hpp"
#include "lgk/int_matrix.hpp"
#include "lgk/smith.hpp"
#include "lgk/abelian_group.hpp"
#include "lgk/direct_limit.hpp"
#include "lgk/graph.hpp"
#include "lgk/graph_io.hpp"
#include "lgk/validate.hpp"
#include "lgk/partition.hpp"
#include "lgk/ktheory.hpp"
#include "lgk/level_system.hpp"
#include "lgk/cover.hpp"
#include "lgk/report.hpp"
