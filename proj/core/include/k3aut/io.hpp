#pragma once

#include "k3aut/counting.hpp"
#include "k3aut/lattice.hpp"
#include "k3aut/reflection.hpp"
#include "k3aut/zeta.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace k3aut {

using Json = nlohmann::json;

/// Integers that fit in 64 bits are written as numbers, others as decimal strings.
Json to_json(const Int& v);
Json to_json(const Rat& v);
Json to_json(const IntVec& v);
Json to_json(const IntMat& m);
Json to_json(const RatPoly& f);
Json to_json(const Lattice& L);
Json to_json(const GaloisOrbit& o);
Json to_json(const PointCountSeries& s);

/// All readers throw std::invalid_argument on malformed input.
Int int_from_json(const Json& j);
Rat rat_from_json(const Json& j);
IntVec int_vec_from_json(const Json& j);
IntMat int_mat_from_json(const Json& j);
/// Either a list of ascending coefficients, or {"denominator": d, "numerator": [...]}.
RatPoly poly_from_json(const Json& j);
/// {"gram": [[int]], "labels": [string]?}
Lattice lattice_from_json(const Json& j);
/// {"classes", "perms"}; "incidence" is recomputed from the ambient lattice and checked if present.
GaloisOrbit orbit_from_json(const Lattice& ambient, const Json& j);
/// {"p": int, "counts": [int]}
PointCountSeries counts_from_json(const Json& j);

/// Compact, key-sorted serialisation.
std::string canonical_dump(const Json& j);
/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest_hex(const std::string& bytes);

Json read_json_file(const std::string& path);

struct ConstantEntry {
  std::string key;
  std::string source;  // "published" or "derived"
  std::string note;
  Json value;
};

/// Versioned table of expected values shipped in the data directory.
class PublishedConstants {
 public:
  static PublishedConstants load(const std::string& path);
  static PublishedConstants load_default();
  static std::string default_path();

  int schema() const { return schema_; }
  const ConstantEntry& entry(const std::string& key) const;
  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  Int integer(const std::string& key) const { return int_from_json(entry(key).value); }
  IntMat matrix(const std::string& key) const { return int_mat_from_json(entry(key).value); }
  std::vector<Int> integers(const std::string& key) const;
  RatPoly poly(const std::string& key) const { return poly_from_json(entry(key).value); }

 private:
  int schema_ = 0;
  std::map<std::string, ConstantEntry> entries_;
};

}  // namespace k3aut
