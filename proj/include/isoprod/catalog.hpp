#ifndef ISOPROD_CATALOG_HPP
#define ISOPROD_CATALOG_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isoprod/group.hpp"
#include "isoprod/group_algos.hpp"
#include "isoprod/pc.hpp"

namespace isoprod {

/// Small-group library identifier <order, number>.
struct GroupId {
  int order = 0;
  int number = 0;

  std::string to_string() const;  // "<order,number>"
  friend bool operator==(const GroupId&, const GroupId&) = default;
  friend auto operator<=>(const GroupId&, const GroupId&) = default;
};

struct PermConstruction {
  int degree = 0;
  std::vector<Permutation> generators;
  friend bool operator==(const PermConstruction&, const PermConstruction&) = default;
};

struct PcConstruction {
  PcPresentation presentation;
  friend bool operator==(const PcConstruction&, const PcConstruction&) = default;
};

struct UnitriangularConstruction {
  int n = 4;
  int q = 2;
  friend bool operator==(const UnitriangularConstruction&,
                         const UnitriangularConstruction&) = default;
};

/// Left-nested direct product of earlier entries.
struct ProductConstruction {
  std::vector<std::string> factors;
  friend bool operator==(const ProductConstruction&, const ProductConstruction&) = default;
};

/// N x| H. `action[i][k]` is the image of the k-th generator of N under
/// conjugation by the i-th generator of H, as a word in N's generators
/// (0-based letters).
struct SemidirectConstruction {
  std::string normal;
  std::string acting;
  std::vector<std::vector<std::vector<int>>> action;
  friend bool operator==(const SemidirectConstruction&,
                         const SemidirectConstruction&) = default;
};

using Construction = std::variant<PermConstruction, PcConstruction,
                                  UnitriangularConstruction, ProductConstruction,
                                  SemidirectConstruction>;

struct GroupDefinition {
  std::string key;
  std::string name;
  std::optional<GroupId> id;
  Construction construction;
  std::optional<GroupFingerprint> fingerprint;
  /// Free-form provenance comment lines directly above the block, kept
  /// for round trips.
  std::vector<std::string> comments;

  friend bool operator==(const GroupDefinition&, const GroupDefinition&) = default;
};

class CatalogParseError : public std::runtime_error {
 public:
  CatalogParseError(std::string source, int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class FingerprintMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Disjoint-cycle notation with 1-based points: "(1,2,3)(4,7)" or "()".
Permutation parse_permutation(int degree, std::string_view text);

std::string format_fingerprint(const GroupFingerprint& f);

/// An ordered set of group definitions with lazily realized groups.
/// Realization is memoized and safe to call from several threads.
class Catalog {
 public:
  Catalog() = default;
  Catalog(const Catalog& other) : entries_(other.entries_) {}
  Catalog& operator=(const Catalog& other) {
    if (this != &other) {
      entries_ = other.entries_;
      std::lock_guard lock(mutex_);
      realized_.clear();
    }
    return *this;
  }

  /// Throws CatalogParseError on syntax errors, unknown construction kinds,
  /// duplicate keys and references to keys not defined earlier.
  static Catalog parse(std::string_view text, std::string source = "<catalog>");
  static Catalog load(const std::string& path);
  /// The catalog shipped with the library (data/groups.cat).
  static Catalog builtin();
  /// `builtin()` for "default", otherwise `load(path)`.
  static Catalog open(const std::string& spec);

  std::string serialize() const;

  const std::vector<GroupDefinition>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Lookup by key, by "<a,b>" / "a,b" id, or by display name.
  const GroupDefinition* find(std::string_view query) const;

  /// Builds the group and checks it against the stored fingerprint (throws
  /// FingerprintMismatch).
  std::shared_ptr<const FiniteGroup> realize(std::string_view key) const;

 private:
  std::vector<GroupDefinition> entries_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const FiniteGroup>, std::less<>> realized_;

  std::shared_ptr<const FiniteGroup> realize_locked(const GroupDefinition& def) const;
};

/// GAP input that rebuilds `g` as a regular permutation group bound to
/// `variable`, for checking an entry against an external library.
std::string export_gap(const FiniteGroup& g, const std::string& variable);

}  // namespace isoprod

#endif  // ISOPROD_CATALOG_HPP
