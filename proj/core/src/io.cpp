#include "k3aut/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace k3aut {

Json to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Json to_json(const Rat& v) {
  if (v.get_den() == 1) return to_json(v.get_num());
  return Json(v.get_str());
}

Json to_json(const IntVec& v) {
  Json j = Json::array();
  for (const Int& x : v) j.push_back(to_json(x));
  return j;
}

Json to_json(const IntMat& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
  return j;
}

Json to_json(const RatPoly& f) {
  Json j = Json::array();
  for (const Rat& c : f.coeffs()) j.push_back(to_json(c));
  return j;
}

Json to_json(const Lattice& L) {
  Json j{{"gram", to_json(L.gram())}};
  if (!L.labels().empty()) j["labels"] = L.labels();
  return j;
}

Json to_json(const GaloisOrbit& o) {
  Json classes = Json::array();
  for (const IntVec& c : o.classes) classes.push_back(to_json(c));
  return Json{{"classes", classes}, {"incidence", to_json(o.incidence)}, {"perms", o.perms}};
}

Json to_json(const PointCountSeries& s) {
  Json counts = Json::array();
  for (const Int& n : s.counts) counts.push_back(to_json(n));
  return Json{{"p", s.p}, {"counts", counts}};
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not an integer: " + j.dump());
    return v;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) {
    Rat v;
    if (v.set_str(j.get<std::string>(), 10) != 0 || v.get_den() == 0)
      throw std::invalid_argument("not a rational: " + j.dump());
    v.canonicalize();
    return v;
  }
  return Rat(int_from_json(j));
}

IntVec int_vec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an integer list");
  IntVec v;
  for (const Json& x : j) v.push_back(int_from_json(x));
  return v;
}

IntMat int_mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty matrix");
  const std::size_t r = j.size();
  const std::size_t c = j.at(0).size();
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const IntVec row = int_vec_from_json(j.at(i));
    if (row.size() != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = row[k];
  }
  return m;
}

RatPoly poly_from_json(const Json& j) {
  std::vector<Rat> c;
  if (j.is_object()) {
    const Int d = int_from_json(j.at("denominator"));
    if (d == 0) throw std::invalid_argument("zero denominator");
    for (const Json& x : j.at("numerator")) c.push_back(rat_from_json(x) / Rat(d));
  } else if (j.is_array()) {
    for (const Json& x : j) c.push_back(rat_from_json(x));
  } else {
    throw std::invalid_argument("expected a polynomial");
  }
  return RatPoly(std::move(c));
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) throw std::invalid_argument("lattice needs a gram field");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return Lattice(int_mat_from_json(j.at("gram")), labels);
}

GaloisOrbit orbit_from_json(const Lattice& ambient, const Json& j) {
  std::vector<IntVec> classes;
  for (const Json& c : j.at("classes")) classes.push_back(int_vec_from_json(c));
  std::vector<std::vector<std::size_t>> perms;
  if (j.contains("perms")) perms = j.at("perms").get<std::vector<std::vector<std::size_t>>>();
  GaloisOrbit o = make_orbit(ambient, std::move(classes), std::move(perms));
  if (j.contains("incidence") && int_mat_from_json(j.at("incidence")) != o.incidence)
    throw std::invalid_argument("stated incidence disagrees with the ambient Gram matrix");
  return o;
}

PointCountSeries counts_from_json(const Json& j) {
  PointCountSeries s;
  s.p = j.at("p").get<unsigned>();
  for (const Json& x : j.at("counts")) s.counts.push_back(int_from_json(x));
  if (s.p < 2) throw std::invalid_argument("p must be a prime");
  return s;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

PublishedConstants PublishedConstants::load(const std::string& path) {
  const Json j = read_json_file(path);
  PublishedConstants pc;
  pc.schema_ = j.at("schema").get<int>();
  if (pc.schema_ != 1) throw std::invalid_argument("unsupported constants schema");
  for (const auto& [key, e] : j.at("entries").items()) {
    ConstantEntry c{key, e.at("source").get<std::string>(), e.value("note", std::string()), e.at("value")};
    if (c.source != "published" && c.source != "derived") throw std::invalid_argument("bad source for " + key);
    pc.entries_.emplace(key, std::move(c));
  }
  return pc;
}

std::string PublishedConstants::default_path() { return std::string(K3AUT_DATA_DIR) + "/published_constants.json"; }

PublishedConstants PublishedConstants::load_default() { return load(default_path()); }

const ConstantEntry& PublishedConstants::entry(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw std::out_of_range("no constant named " + key);
  return it->second;
}

std::vector<Int> PublishedConstants::integers(const std::string& key) const { return int_vec_from_json(entry(key).value); }

}  // namespace k3aut
