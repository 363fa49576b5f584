#pragma once

#include <functional>
#include <set>
#include <string>

#include "mfrag/error.hpp"
#include "mfrag/matroid.hpp"

namespace mfrag {

// True when fn throws an Error carrying exactly the given code.
inline bool throws_code(const std::string& code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

// Equality of labelled matroids irrespective of ground order.
inline bool same_labeled(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.rank() != b.rank()) return false;
  std::set<std::string> ga(a.ground().begin(), a.ground().end());
  std::set<std::string> gb(b.ground().begin(), b.ground().end());
  if (ga != gb) return false;
  if (a.bases().size() != b.bases().size()) return false;
  for (uint32_t mask : a.bases())
    if (!b.is_basis(b.mask_of(a.labels_of(mask)))) return false;
  return true;
}

}  // namespace mfrag
