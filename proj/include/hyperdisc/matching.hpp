// Maximum bipartite matching (Hopcroft-Karp).
#ifndef HYPERDISC_MATCHING_HPP
#define HYPERDISC_MATCHING_HPP

#include <utility>
#include <vector>

namespace hyperdisc {

// Returns matched (left, right) index pairs sorted by left index. The result
// is a maximum matching, so its size meets the nearly-regular guarantee
// e/(max degree + 1) with room to spare.
std::vector<std::pair<int, int>> max_bipartite_matching(int n_left, int n_right,
                                                        const std::vector<std::vector<int>>& adj);

}  // namespace hyperdisc

#endif
