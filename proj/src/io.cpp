#include "mfrag/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mfrag/error.hpp"

namespace mfrag {

namespace {

struct Token {
  std::string text;
  int line = 0, col = 0;
};

[[noreturn]] void parse_fail(int line, int col, const std::string& msg) {
  fail("ParseError",
       "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// Message part of a nested Error, without the code prefix.
std::string bare_message(const Error& e) {
  std::string s = e.what();
  std::string prefix = e.code() + ": ";
  return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
}

// Significant lines as token lists; '#' starts a comment.
std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> out;
  int line = 1;
  size_t pos = 0;
  for (;; ++line) {
    size_t eol = text.find('\n', pos);
    std::string raw = text.substr(pos, (eol == std::string::npos ? text.size() : eol) - pos);
    if (size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::vector<Token> toks;
    for (size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      toks.push_back({raw.substr(i, j - i), line, static_cast<int>(i) + 1});
      i = j;
    }
    if (!toks.empty()) out.push_back(std::move(toks));
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return out;
}

// The next line, which must start with the given keyword.
const std::vector<Token>& expect_line(const std::vector<std::vector<Token>>& lines, size_t& at,
                                      const std::string& keyword) {
  if (at >= lines.size()) {
    int line = lines.empty() ? 1 : lines.back().front().line + 1;
    parse_fail(line, 1, "expected a '" + keyword + "' line");
  }
  const auto& toks = lines[at];
  if (toks[0].text != keyword)
    parse_fail(toks[0].line, toks[0].col, "expected '" + keyword + "', found '" + toks[0].text + "'");
  ++at;
  return toks;
}

void expect_end(const std::vector<std::vector<Token>>& lines, size_t at) {
  if (at < lines.size())
    parse_fail(lines[at][0].line, lines[at][0].col,
               "unexpected content '" + lines[at][0].text + "'");
}

std::vector<std::string> label_tail(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (size_t i = 1; i < toks.size(); ++i) {
    if (!seen.insert(toks[i].text).second)
      parse_fail(toks[i].line, toks[i].col, "duplicate label '" + toks[i].text + "'");
    out.push_back(toks[i].text);
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::string comma_joined(const std::vector<std::string>& ls) {
  std::string out;
  for (const auto& l : ls) {
    if (!out.empty()) out += ",";
    out += l;
  }
  return out;
}

}  // namespace

PMatrix parse_pmx(const std::string& text) {
  auto lines = tokenize(text);
  size_t at = 0;

  const auto& pf_line = expect_line(lines, at, "pf");
  if (pf_line.size() != 2)
    parse_fail(pf_line[0].line, pf_line[0].col, "'pf' takes exactly one field name");
  PartialField pf = PartialField::make("regular");
  try {
    pf = PartialField::make(pf_line[1].text);
  } catch (const Error& e) {
    parse_fail(pf_line[1].line, pf_line[1].col, bare_message(e));
  }

  std::vector<std::string> rows = label_tail(expect_line(lines, at, "rows"));
  std::vector<std::string> cols = label_tail(expect_line(lines, at, "cols"));
  for (const auto& c : cols)
    if (std::find(rows.begin(), rows.end(), c) != rows.end())
      parse_fail(lines[at - 1][0].line, lines[at - 1][0].col,
                 "label '" + c + "' appears among both rows and columns");

  std::vector<PFElement> entries;
  for (const auto& r : rows) {
    if (at >= lines.size())
      parse_fail(lines.back().front().line + 1, 1, "expected a row line for '" + r + "'");
    const auto& toks = lines[at++];
    if (toks[0].text != r + ":")
      parse_fail(toks[0].line, toks[0].col, "expected row '" + r + ":', found '" + toks[0].text + "'");
    if (toks.size() != cols.size() + 1)
      parse_fail(toks[0].line, toks[0].col,
                 "row '" + r + "' needs " + std::to_string(cols.size()) + " entries");
    for (size_t j = 1; j < toks.size(); ++j) {
      try {
        entries.push_back(pf.parse(toks[j].text));
      } catch (const Error& e) {
        parse_fail(toks[j].line, toks[j].col, bare_message(e));
      }
    }
  }
  expect_end(lines, at);
  return PMatrix(pf, rows, cols, entries);
}

std::string format_pmx(const PMatrix& a) {
  std::ostringstream out;
  out << "pf " << a.field().name() << "\n";
  out << "rows";
  for (const auto& r : a.row_labels()) out << " " << r;
  out << "\ncols";
  for (const auto& c : a.col_labels()) out << " " << c;
  out << "\n";
  for (int i = 0; i < a.nrows(); ++i) {
    out << a.row_labels()[i] << ":";
    for (int j = 0; j < a.ncols(); ++j) out << " " << a.field().format(a.at(i, j));
    out << "\n";
  }
  return out.str();
}

Matroid parse_mtd(const std::string& text, bool validate) {
  auto lines = tokenize(text);
  size_t at = 0;

  std::vector<std::string> ground = label_tail(expect_line(lines, at, "ground"));
  if (ground.size() > 16) {
    const auto& t = lines[0];
    parse_fail(t[0].line, t[0].col, "ground sets are limited to 16 elements");
  }
  std::map<std::string, int> index;
  for (size_t i = 0; i < ground.size(); ++i) index[ground[i]] = static_cast<int>(i);

  const auto& rank_line = expect_line(lines, at, "rank");
  if (rank_line.size() != 2)
    parse_fail(rank_line[0].line, rank_line[0].col, "'rank' takes exactly one number");
  int rank = 0;
  try {
    size_t used = 0;
    rank = std::stoi(rank_line[1].text, &used);
    if (used != rank_line[1].text.size() || rank < 0) throw std::invalid_argument("");
  } catch (const std::exception&) {
    parse_fail(rank_line[1].line, rank_line[1].col,
               "'" + rank_line[1].text + "' is not a valid rank");
  }

  if (at >= lines.size()) {
    int line = lines.back().front().line + 1;
    parse_fail(line, 1, "expected a 'bases' or 'nonbases' line");
  }
  const auto& sets_line = lines[at++];
  bool complement = sets_line[0].text == "nonbases";
  if (!complement && sets_line[0].text != "bases")
    parse_fail(sets_line[0].line, sets_line[0].col,
               "expected 'bases' or 'nonbases', found '" + sets_line[0].text + "'");
  expect_end(lines, at);

  std::vector<uint32_t> listed;
  for (size_t i = 1; i < sets_line.size(); ++i) {
    uint32_t mask = 0;
    for (const auto& l : split_commas(sets_line[i].text)) {
      auto it = index.find(l);
      if (it == index.end())
        parse_fail(sets_line[i].line, sets_line[i].col, "unknown label '" + l + "'");
      mask |= 1u << it->second;
    }
    if (std::popcount(mask) != rank ||
        static_cast<int>(split_commas(sets_line[i].text).size()) != rank)
      parse_fail(sets_line[i].line, sets_line[i].col,
                 "set '" + sets_line[i].text + "' does not have " + std::to_string(rank) +
                     " distinct elements");
    listed.push_back(mask);
  }

  std::vector<uint32_t> bases;
  if (complement) {
    std::sort(listed.begin(), listed.end());
    uint32_t full = ground.empty() ? 0 : (1u << ground.size()) - 1;
    for (uint32_t s = 0;; ++s) {
      if (std::popcount(s) == rank && !std::binary_search(listed.begin(), listed.end(), s))
        bases.push_back(s);
      if (s == full) break;
    }
  } else {
    bases = listed;
  }
  return Matroid::from_masks(ground, std::move(bases), validate);
}

std::string format_mtd(const Matroid& m) {
  std::ostringstream out;
  out << "ground";
  for (const auto& l : m.ground()) out << " " << l;
  out << "\nrank " << m.rank() << "\n";

  uint32_t full = m.full_mask();
  std::vector<uint32_t> nonbases;
  for (uint32_t s = 0;; ++s) {
    if (std::popcount(s) == m.rank() &&
        !std::binary_search(m.bases().begin(), m.bases().end(), s))
      nonbases.push_back(s);
    if (s == full) break;
  }
  bool complement = nonbases.size() < m.bases().size();
  std::vector<uint32_t> sets = complement ? std::move(nonbases) : m.bases();
  std::sort(sets.begin(), sets.end(), mask_lex_less);
  out << (complement ? "nonbases" : "bases");
  for (uint32_t s : sets) out << " " << comma_joined(m.label_list_of(s));
  out << "\n";
  return out.str();
}

CtxFile parse_ctx(const std::string& text) {
  auto lines = tokenize(text);
  size_t at = 0;
  CtxFile ctx;

  auto one_arg = [&](const std::string& keyword) {
    const auto& toks = expect_line(lines, at, keyword);
    if (toks.size() != 2)
      parse_fail(toks[0].line, toks[0].col, "'" + keyword + "' takes exactly one argument");
    return toks[1].text;
  };
  ctx.matroid_path = one_arg("matroid");
  ctx.minor_path = one_arg("minor");

  const auto& pair_line = expect_line(lines, at, "pair");
  if (pair_line.size() != 3)
    parse_fail(pair_line[0].line, pair_line[0].col, "'pair' takes exactly two labels");
  ctx.a = pair_line[1].text;
  ctx.b = pair_line[2].text;

  const auto& basis_line = expect_line(lines, at, "basis");
  if (basis_line.size() != 2)
    parse_fail(basis_line[0].line, basis_line[0].col, "'basis' takes one comma-joined list");
  for (const auto& l : split_commas(basis_line[1].text)) {
    if (!ctx.basis.insert(l).second)
      parse_fail(basis_line[1].line, basis_line[1].col, "duplicate basis label '" + l + "'");
  }

  const auto& xy_line = expect_line(lines, at, "xy");
  if (xy_line.size() != 3)
    parse_fail(xy_line[0].line, xy_line[0].col, "'xy' takes exactly two labels");
  ctx.x = xy_line[1].text;
  ctx.y = xy_line[2].text;

  if (at < lines.size() && lines[at][0].text == "companion") ctx.companion_path = one_arg("companion");
  expect_end(lines, at);
  return ctx;
}

std::string format_ctx(const CtxFile& c) {
  std::ostringstream out;
  out << "matroid " << c.matroid_path << "\n";
  out << "minor " << c.minor_path << "\n";
  out << "pair " << c.a << " " << c.b << "\n";
  out << "basis " << comma_joined({c.basis.begin(), c.basis.end()}) << "\n";
  out << "xy " << c.x << " " << c.y << "\n";
  if (c.companion_path) out << "companion " << *c.companion_path << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("FileNotFound", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PMatrix load_pmx(const std::string& path, bool validate) {
  PMatrix a = parse_pmx(read_file(path));
  if (validate)
    if (auto v = pmatrix_violation(a))
      fail("ValidationError", "'" + path + "' is not a P-matrix: det A[" +
                                  comma_joined({v->z.begin(), v->z.end()}) + "] = " +
                                  a.field().format(v->det));
  return a;
}

Matroid load_mtd(const std::string& path, bool validate) {
  return parse_mtd(read_file(path), validate);
}

CtxFile load_ctx(const std::string& path) { return parse_ctx(read_file(path)); }

SetupContext load_setup(const std::string& path) {
  CtxFile ctx = load_ctx(path);
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? p : (dir / fp).string();
  };
  Matroid m = load_mtd(resolve(ctx.matroid_path));
  Matroid n = load_mtd(resolve(ctx.minor_path));
  std::optional<PMatrix> companion;
  if (ctx.companion_path) companion = load_pmx(resolve(*ctx.companion_path), false);
  return make_setup(m, n, ctx.a, ctx.b, ctx.basis, ctx.x, ctx.y, companion);
}

}  // namespace mfrag
