#include "mfrag/corpus.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mfrag/catalog.hpp"
#include "mfrag/connectivity.hpp"
#include "mfrag/error.hpp"
#include "mfrag/io.hpp"

namespace mfrag {

namespace {

// Points of PG(r-1, q): nonzero vectors with first nonzero coordinate 1,
// in lexicographic order. The r unit vectors are among them.
std::vector<std::vector<int>> projective_points(int r, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(r, 0);
  while (true) {
    int i = r - 1;
    while (i >= 0 && v[i] == q - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
    int first = 0;
    while (v[first] == 0) ++first;
    if (v[first] == 1) out.push_back(v);
  }
  return out;
}

int det_mod(std::vector<std::vector<int>> a, int q) {
  int n = static_cast<int>(a.size());
  long long det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] % q == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    int inv = 1;  // inverse of a[c][c] mod q
    while (inv * a[c][c] % q != 1) ++inv;
    det = det * a[c][c] % q;
    for (int r = c + 1; r < n; ++r) {
      int f = a[r][c] * inv % q;
      for (int k = c; k < n; ++k) a[r][k] = ((a[r][k] - f * a[c][k]) % q + q) % q;
    }
  }
  return static_cast<int>(((det % q) + q) % q);
}

std::vector<std::string> numeric_ground(int m) {
  std::vector<std::string> g;
  for (int i = 1; i <= m; ++i) g.push_back(std::to_string(i));
  return g;
}

// Invariant fingerprint used to bucket candidates before isomorphism tests.
std::string iso_key(const Matroid& m) {
  std::vector<int> degree(m.size(), 0);
  for (uint32_t b : m.bases())
    for (int i = 0; i < m.size(); ++i)
      if (b >> i & 1) ++degree[i];
  std::sort(degree.begin(), degree.end());
  int triangles = 0, triads = 0;
  uint32_t full = m.full_mask();
  for (uint32_t s = 0; s <= full; ++s) {
    if (std::popcount(s) != 3) continue;
    if (m.is_circuit(s)) ++triangles;
    if (m.is_cocircuit(s)) ++triads;
  }
  std::ostringstream os;
  os << m.rank() << ':' << m.bases().size() << ':' << triangles << ':' << triads << ':';
  for (int d : degree) os << d << ',';
  return os.str();
}

void dedupe_insert(std::map<std::string, std::vector<Matroid>>& buckets, Matroid m,
                   std::vector<Matroid>& out) {
  auto& bucket = buckets[iso_key(m)];
  for (const Matroid& seen : bucket)
    if (isomorphic(seen, m)) return;
  bucket.push_back(m);
  out.push_back(std::move(m));
}

// All 3-connected matroids on m <= 3 elements (every one is representable
// over every field), by exhaustive enumeration of basis families.
std::vector<Matroid> tiny_matroids(int m) {
  std::vector<Matroid> out;
  std::map<std::string, std::vector<Matroid>> buckets;
  auto ground = numeric_ground(m);
  for (int r = 0; r <= m; ++r) {
    std::vector<uint32_t> rsets;
    for (uint32_t s = 0; s < (1u << m); ++s)
      if (std::popcount(s) == r) rsets.push_back(s);
    for (uint32_t pick = 1; pick < (1u << rsets.size()); ++pick) {
      std::vector<uint32_t> bases;
      for (size_t i = 0; i < rsets.size(); ++i)
        if (pick >> i & 1) bases.push_back(rsets[i]);
      try {
        Matroid cand = Matroid::from_masks(ground, std::move(bases), true);
        if (is_3connected(cand)) dedupe_insert(buckets, std::move(cand), out);
      } catch (const Error&) {
      }
    }
  }
  return out;
}

// Simple rank-r GF(q) matroids on m labelled elements containing the
// standard basis, one representative per isomorphism class, 3-connected
// only. Complete for m >= 4: a 3-connected matroid on >= 4 elements is
// simple, and any representation can be normalized so that some basis maps
// to the identity columns.
std::vector<Matroid> projective_layer(int q, int m, int r) {
  std::vector<Matroid> out;
  std::map<std::string, std::vector<Matroid>> buckets;
  auto points = projective_points(r, q);
  std::vector<std::vector<int>> pool;
  for (const auto& p : points) {
    int nz = 0;
    for (int x : p) nz += x != 0;
    if (nz > 1) pool.push_back(p);  // skip the unit vectors
  }
  int extra = m - r;
  if (extra < 0 || extra > static_cast<int>(pool.size())) return out;
  auto ground = numeric_ground(m);
  std::vector<int> comb(extra);
  for (int i = 0; i < extra; ++i) comb[i] = i;
  while (true) {
    std::vector<std::vector<int>> cols;
    for (int i = 0; i < r; ++i) {
      std::vector<int> e(r, 0);
      e[i] = 1;
      cols.push_back(e);
    }
    for (int i = 0; i < extra; ++i) cols.push_back(pool[comb[i]]);
    std::vector<uint32_t> bases;
    for (uint32_t s = 0; s < (1u << m); ++s) {
      if (std::popcount(s) != r) continue;
      std::vector<std::vector<int>> sq;
      for (int i = 0; i < m; ++i)
        if (s >> i & 1) sq.push_back(cols[i]);
      if (det_mod(sq, q) != 0) bases.push_back(s);
    }
    Matroid cand = Matroid::from_masks(ground, std::move(bases), false);
    if (is_3connected(cand)) dedupe_insert(buckets, std::move(cand), out);
    if (extra == 0) break;
    int i = extra - 1;
    while (i >= 0 && comb[i] == static_cast<int>(pool.size()) - extra + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < extra; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

std::vector<CorpusEntry> generate_gf_upto(int q, int n) {
  std::vector<CorpusEntry> out;
  for (int m = 1; m <= n; ++m) {
    if (m <= 3) {
      std::map<int, int> idx_by_rank;
      for (Matroid& cand : tiny_matroids(m)) {
        int r = cand.rank();
        std::string name = "gf" + std::to_string(q) + "-" + std::to_string(m) + "-" +
                           std::to_string(r) + "-" + std::to_string(idx_by_rank[r]++);
        out.push_back({std::move(name), std::move(cand)});
      }
      continue;
    }
    for (int r = 2; r <= m - 2; ++r) {
      int idx = 0;
      for (Matroid& cand : projective_layer(q, m, r)) {
        std::string name = "gf" + std::to_string(q) + "-" + std::to_string(m) + "-" +
                           std::to_string(r) + "-" + std::to_string(idx++);
        out.push_back({std::move(name), std::move(cand)});
      }
    }
  }
  return out;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 15];
    v >>= 4;
  }
  return s;
}

std::optional<std::string> effective_cache_dir(const std::optional<std::string>& cache_dir) {
  if (cache_dir && !cache_dir->empty()) return cache_dir;
  if (const char* env = std::getenv("MFRAG_CACHE_DIR"); env && *env) return std::string(env);
  return std::nullopt;
}

std::string corpus_to_text(const std::vector<CorpusEntry>& entries) {
  std::ostringstream os;
  for (const auto& e : entries) os << "entry " << e.name << "\n" << format_mtd(e.m) << "end\n";
  return os.str();
}

std::optional<std::vector<CorpusEntry>> corpus_from_text(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::istringstream is(text);
  std::string line;
  std::string name, block;
  auto flush = [&]() -> bool {
    if (name.empty()) return block.empty();
    try {
      out.push_back({name, parse_mtd(block, false)});
    } catch (const Error&) {
      return false;
    }
    name.clear();
    block.clear();
    return true;
  };
  while (std::getline(is, line)) {
    if (line.rfind("entry ", 0) == 0) {
      if (!flush()) return std::nullopt;
      name = line.substr(6);
    } else if (line == "end") {
      if (name.empty() || !flush()) return std::nullopt;
    } else if (!line.empty()) {
      if (name.empty()) return std::nullopt;
      block += line;
      block += '\n';
    }
  }
  if (!flush()) return std::nullopt;
  return out;
}

}  // namespace

std::vector<CorpusEntry> corpus_catalog() {
  std::vector<CorpusEntry> out;
  for (const std::string& name : catalog_names()) out.push_back({name, catalog(name)});
  return out;
}

std::vector<CorpusEntry> corpus_all_gf_upto(int q, int n,
                                            const std::optional<std::string>& cache_dir) {
  if (q != 2 && q != 3) fail("UnknownField", "corpus generation supports GF(2) and GF(3) only");
  if (n < 1 || n > 9) fail("CorpusCapExceeded", "corpus generation cap exceeded (n must be 1..9)");
  std::string spec = "all-gf" + std::to_string(q) + "-upto(" + std::to_string(n) + ")";
  std::optional<std::string> dir = effective_cache_dir(cache_dir);
  std::filesystem::path file;
  if (dir) {
    file = std::filesystem::path(*dir) /
           ("corpus-" + hex64(fnv1a("v1:" + spec)) + ".txt");
    std::ifstream in(file);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      std::string text = ss.str();
      auto nl = text.find('\n');
      if (nl != std::string::npos && text.compare(0, 7, "digest ") == 0) {
        std::string body = text.substr(nl + 1);
        if (text.substr(7, nl - 7) == hex64(fnv1a(body)))
          if (auto cached = corpus_from_text(body)) return *cached;
      }
    }
  }
  auto entries = generate_gf_upto(q, n);
  if (dir) {
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (!ec) {
      std::string body = corpus_to_text(entries);
      std::ofstream outf(file, std::ios::trunc);
      outf << "digest " << hex64(fnv1a(body)) << "\n" << body;
    }
  }
  return entries;
}

std::vector<CorpusEntry> corpus_files(const std::vector<std::string>& paths) {
  std::vector<CorpusEntry> out;
  for (const std::string& p : paths) out.push_back({p, load_mtd(p, true)});
  return out;
}

std::vector<CorpusEntry> resolve_corpus(const std::string& spec,
                                        const std::optional<std::string>& cache_dir) {
  if (spec == "catalog") return corpus_catalog();
  for (int q : {2, 3}) {
    std::string prefix = "all-gf" + std::to_string(q) + "-upto(";
    if (spec.rfind(prefix, 0) == 0 && spec.back() == ')') {
      std::string num = spec.substr(prefix.size(), spec.size() - prefix.size() - 1);
      size_t used = 0;
      int n = 0;
      try {
        n = std::stoi(num, &used);
      } catch (const std::exception&) {
        fail("UnknownCorpusSpec", "bad corpus bound in '" + spec + "'");
      }
      if (used != num.size()) fail("UnknownCorpusSpec", "bad corpus bound in '" + spec + "'");
      return corpus_all_gf_upto(q, n, cache_dir);
    }
  }
  if (spec.rfind("files:", 0) == 0) {
    std::vector<std::string> paths;
    std::string rest = spec.substr(6);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      if (comma > pos) paths.push_back(rest.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (paths.empty()) fail("UnknownCorpusSpec", "empty file list in corpus spec");
    return corpus_files(paths);
  }
  if (std::filesystem::exists(spec)) return corpus_files({spec});
  fail("UnknownCorpusSpec",
       "expected catalog, all-gf2-upto(n), all-gf3-upto(n), or files:...; got '" + spec + "'");
}

}  // namespace mfrag
