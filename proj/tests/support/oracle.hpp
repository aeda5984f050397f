#pragma once

#include <vector>

#include "gridee/codec.hpp"

namespace testoracle {

// Brute-force reference decoder, written independently of the library path:
// plain nested scans over every candidate span pair and every prescribed role
// cell, no shared helpers. Guarded to n <= 8 since it is O(n^4) per link.
std::vector<gridee::EventRecord> oracle_decode(const gridee::LabelGrid& grid,
                                               const gridee::Schema& schema,
                                               gridee::RoleStrategy strategy);
std::vector<gridee::EventRecord> oracle_decode(const gridee::ScoreGrid& grid,
                                               const gridee::Schema& schema,
                                               gridee::RoleStrategy strategy);

}  // namespace testoracle
