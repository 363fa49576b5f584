#pragma once

#include <string>
#include <vector>

#include "mfrag/matroid.hpp"

namespace mfrag {

// Named matroids: U(m,n) for m <= n <= 10 ("U24" shorthand for single
// digits), wheel(r) / whirl(r) for 2 <= r <= 5, MK4, K23, F7, F7minus,
// AG23e, P8. See README for the label conventions of each family.
Matroid catalog(const std::string& name);

// Every catalog instance name, one per matroid, in a stable order.
std::vector<std::string> catalog_names();

// Wheels and whirls of any rank 2..8; catalog() itself stops at rank 5.
Matroid wheel_matroid(int r);
Matroid whirl_matroid(int r);

// Delta-Y exchange on a coindependent triangle, and its dual on an
// independent triad. The labels of the exchanged set persist on the three
// replacement elements.
Matroid delta_y(const Matroid& m, const std::set<std::string>& triangle);
Matroid wye_delta(const Matroid& m, const std::set<std::string>& triad);

bool is_binary(const Matroid& m);

}  // namespace mfrag
