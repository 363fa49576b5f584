#pragma once

#include <optional>
#include <set>
#include <string>

#include "mfrag/exminor.hpp"
#include "mfrag/matroid.hpp"
#include "mfrag/pmatrix.hpp"

namespace mfrag {

// Line-oriented exact formats with '#' comments. Parse errors carry the
// location as "line L, column C: message" under the ParseError code; the
// writers emit a canonical form whose reparse is byte-stable.

// .pmx:  pf GF(5) / rows x u / cols y v / then one "label: e1 e2 ..." line
// per row in header order, entries in the element grammar of the field.
PMatrix parse_pmx(const std::string& text);
std::string format_pmx(const PMatrix& a);

// .mtd:  ground 1 2 3 4 / rank 2 / bases|nonbases with one comma-joined set
// per token. The writer picks whichever section is shorter.
Matroid parse_mtd(const std::string& text, bool validate = true);
std::string format_mtd(const Matroid& m);

// .ctx:  matroid <path> / minor <path> / pair a b / basis <comma-list> /
// xy x y / optional companion <path.pmx>.
struct CtxFile {
  std::string matroid_path, minor_path;
  std::string a, b;
  std::set<std::string> basis;
  std::string x, y;
  std::optional<std::string> companion_path;
};
CtxFile parse_ctx(const std::string& text);
std::string format_ctx(const CtxFile& c);

// Whole-file loaders; FileNotFound when unreadable. With validate set,
// load_pmx additionally checks the P-matrix property (ValidationError) and
// load_mtd checks the exchange axiom.
std::string read_file(const std::string& path);
PMatrix load_pmx(const std::string& path, bool validate = true);
Matroid load_mtd(const std::string& path, bool validate = true);
CtxFile load_ctx(const std::string& path);

// Loads every piece of a .ctx, resolving relative paths against the file's
// directory, and assembles the validated SetupContext. The companion matrix
// is loaded without the P-matrix check (companion matrices are usually not
// P-matrices in full).
SetupContext load_setup(const std::string& path);

}  // namespace mfrag
