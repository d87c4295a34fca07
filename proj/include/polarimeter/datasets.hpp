#pragma once

#include <string_view>

#include "polarimeter/graph.hpp"

namespace polarimeter {

// Zachary's karate club (34 members, 78 ties) with the two post-split
// factions as opinions 0 and 1. Compiled in from data/karate*.tsv.
LabeledGraph karate_club();

std::string_view karate_edges_tsv();
std::string_view karate_factions_tsv();

}  // namespace polarimeter
