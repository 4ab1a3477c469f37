// Exhaustive generation of centered tiling graphs and the operation index
// keyed by (input sequence, weight vector).

#pragma once

#include <map>
#include <string>
#include <vector>

#include "cm1/tiling.hpp"

namespace cm1 {

struct BudgetError : std::runtime_error {
  int required = 0;
  int budget = 0;
  BudgetError(int req, int bud, const std::string& what)
      : std::runtime_error(what), required(req), budget(bud) {}
};

struct IndexFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VersionError : IndexFileError {
  using IndexFileError::IndexFileError;
};
struct CorruptIndexError : IndexFileError {
  using IndexFileError::IndexFileError;
};

constexpr int kIndexFormatVersion = 1;
constexpr int kDefaultEnumerationCap = 4;

// All valid rooted centered tiling graphs with exactly d internal vertices,
// deduplicated by canonical form, in canonical-key order.  Throws
// BudgetError when d exceeds the cap (never truncates silently).
std::vector<TilingGraph> enumerate_centered(const AlgebraContext& ctx, int d,
                                            int cap = kDefaultEnumerationCap);

struct IndexKey {
  std::vector<BasisPath> inputs;
  std::vector<int> weight;
  auto operator<=>(const IndexKey&) const = default;
};

struct IndexValue {
  int iota = 0;
  int d = 0;
  long long multiplicity = 0;
  CanonicalKey witness;  // one representative rooted graph
  bool operator==(const IndexValue&) const = default;
};

struct OperationIndex {
  int m = 0;
  int d_max = 0;
  std::map<IndexKey, std::vector<IndexValue>> entries;

  bool operator==(const OperationIndex&) const = default;
};

// Aggregates enumerate_centered(m, d) for 1 <= d <= d_max.  Checks the two
// grading laws (m*d = total shadow + total weight; n = 2md - 4d + 2 - 2w)
// on every entry.
OperationIndex build_index(const AlgebraContext& ctx, int d_max,
                           int cap = kDefaultEnumerationCap);

// Versioned JSON persistence; store/load round-trips bit-exact.
void store_index(const OperationIndex& idx, const std::string& path);
OperationIndex load_index(const std::string& path);

std::string index_to_json_string(const OperationIndex& idx);
OperationIndex index_from_json_string(const std::string& text);

}  // namespace cm1
