#include "k3aut/counting.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace k3aut {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct CTerm {
  Fq::Elem coeff;
  std::vector<unsigned> e;
};

std::vector<CTerm> compile(const Fq& K, const HomPoly& f) {
  std::vector<CTerm> out;
  for (const Monomial& t : f) {
    const Fq::Elem c = K.from_int(t.coeff);
    if (c != 0) out.push_back({c, t.exps});
  }
  return out;
}

// c * prod x_i^e_i in the log domain.
inline Fq::Elem term_value(const Fq& K, Fq::Elem c, const std::vector<unsigned>& e, const Fq::Elem* x,
                           std::size_t nvars) {
  const std::uint64_t order = K.size() - 1;
  std::uint64_t lg = c - 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (e[i] == 0) continue;
    if (x[i] == 0) return 0;
    lg += static_cast<std::uint64_t>(e[i]) * (x[i] - 1);
  }
  return static_cast<Fq::Elem>(lg % order) + 1;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Normalised vectors of length m (first nonzero coordinate 1), by flat index.
struct NormalisedSpace {
  std::uint64_t q;
  unsigned m;
  std::vector<std::uint64_t> block;  // block[i] = q^(m-1-i)
  std::uint64_t total = 0;
  const std::vector<Fq::Elem>* elems;

  NormalisedSpace(const Fq& K, unsigned m_, const std::vector<Fq::Elem>& el) : q(K.size()), m(m_), elems(&el) {
    for (unsigned i = 0; i < m; ++i) {
      block.push_back(ipow(q, m - 1 - i));
      total += block.back();
    }
  }

  void decode(std::uint64_t idx, Fq::Elem* out) const {
    unsigned lead = 0;
    while (idx >= block[lead]) idx -= block[lead++];
    for (unsigned i = 0; i < lead; ++i) out[i] = 0;
    out[lead] = 1;
    for (unsigned i = m; i-- > lead + 1;) {
      out[i] = (*elems)[idx % q];
      idx /= q;
    }
  }
};

template <class F>
std::uint64_t parallel_sum(std::uint64_t total, unsigned threads, F&& work) {
  if (threads == 0) threads = 1;
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, threads * 8ULL));
  std::vector<std::uint64_t> partial(chunks, 0);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    partial[c] = work(lo, hi);
  };
  if (threads == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  std::uint64_t s = 0;
  for (std::uint64_t v : partial) s += v;
  return s;
}

unsigned degree(const HomPoly& f) {
  unsigned d = 0;
  for (const Monomial& t : f) {
    unsigned s = 0;
    for (unsigned e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

}  // namespace

void validate(const SurfaceModel& m) {
  if (!is_prime(m.p)) throw std::invalid_argument("model characteristic must be prime");
  if (m.ambient_dim < 1 || m.ambient_dim > 4) throw std::invalid_argument("ambient dimension must be 1..4");
  if (!m.vars.empty() && m.vars.size() != m.ambient_dim + 1) throw std::invalid_argument("variable names do not match dimension");
  for (const HomPoly& f : m.polys) {
    if (f.empty()) continue;
    const unsigned d = degree(f);
    for (const Monomial& t : f) {
      if (t.exps.size() != m.ambient_dim + 1) throw std::invalid_argument("exponent vector has wrong length");
      unsigned s = 0;
      for (unsigned e : t.exps) s += e;
      if (s != d) throw std::invalid_argument("polynomial is not homogeneous");
    }
  }
}

SurfaceModel parse_surface_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SurfaceModel m;
  m.name = j.value("name", std::string());
  m.p = j.at("p").get<unsigned>();
  m.ambient_dim = j.at("ambient_dim").get<unsigned>();
  if (j.contains("vars")) m.vars = j.at("vars").get<std::vector<std::string>>();
  for (const auto& pj : j.at("polys")) {
    HomPoly f;
    for (const auto& tj : pj) {
      Monomial t;
      t.coeff = tj.at(0).get<long>();
      t.exps = tj.at(1).get<std::vector<unsigned>>();
      f.push_back(std::move(t));
    }
    m.polys.push_back(std::move(f));
  }
  validate(m);
  return m;
}

SurfaceModel load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open surface file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_surface_json(ss.str());
}

std::string shipped_surface_path(const std::string& name) {
  return std::string(K3AUT_DATA_DIR) + "/surfaces/" + name + ".json";
}

std::string canonical_surface_string(const SurfaceModel& m) {
  std::ostringstream os;
  os << "p=" << m.p << ";d=" << m.ambient_dim;
  for (const HomPoly& f : m.polys) {
    os << ";[";
    for (const Monomial& t : f) {
      os << t.coeff << ':';
      for (unsigned e : t.exps) os << e;
      os << ',';
    }
    os << ']';
  }
  return os.str();
}

Fq::Elem evaluate(const Fq& K, const HomPoly& f, const std::vector<Fq::Elem>& x) {
  Fq::Elem s = 0;
  for (const Monomial& t : f) {
    const Fq::Elem c = K.from_int(t.coeff);
    if (c == 0) continue;
    s = K.add(s, term_value(K, c, t.exps, x.data(), x.size()));
  }
  return s;
}

std::uint64_t count_direct(const SurfaceModel& m, unsigned n, const CountOptions& opt) {
  validate(m);
  const Fq K(m.p, n);
  const unsigned nv = m.ambient_dim + 1;
  if (static_cast<double>(ipow(K.size(), m.ambient_dim)) > opt.direct_budget)
    throw std::length_error("direct count exceeds its point budget");
  std::vector<std::vector<CTerm>> polys;
  for (const HomPoly& f : m.polys) polys.push_back(compile(K, f));
  const std::vector<Fq::Elem> elems = K.elements();
  const NormalisedSpace space(K, nv, elems);
  return parallel_sum(space.total, opt.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    std::vector<Fq::Elem> x(nv);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      space.decode(idx, x.data());
      bool on = true;
      for (const auto& f : polys) {
        Fq::Elem s = 0;
        for (const CTerm& t : f) s = K.add(s, term_value(K, t.coeff, t.e, x.data(), nv));
        if (s != 0) {
          on = false;
          break;
        }
      }
      c += on;
    }
    return c;
  });
}

std::uint64_t count_fibered(const SurfaceModel& m, unsigned n, const CountOptions& opt) {
  validate(m);
  const Fq K(m.p, n);
  const unsigned nv = m.ambient_dim + 1;
  const unsigned last = nv - 1;
  // Terms grouped by the exponent of the last variable.
  struct Grouped {
    std::vector<std::vector<CTerm>> by_power;
  };
  std::vector<Grouped> polys;
  for (const HomPoly& f : m.polys) {
    Grouped g;
    for (const CTerm& t : compile(K, f)) {
      const unsigned k = t.e[last];
      if (k > 4) throw std::invalid_argument("fibred count needs last-variable degree at most 4");
      if (g.by_power.size() <= k) g.by_power.resize(k + 1);
      g.by_power[k].push_back(t);
    }
    polys.push_back(std::move(g));
  }
  // The point (0 : ... : 0 : 1).
  std::vector<Fq::Elem> apex(nv, 0);
  apex[last] = 1;
  bool apex_on = true;
  for (const HomPoly& f : m.polys) apex_on = apex_on && evaluate(K, f, apex) == 0;

  const std::vector<Fq::Elem> elems = K.elements();
  const NormalisedSpace space(K, last, elems);
  const std::uint64_t q = K.size();
  const std::uint64_t fibres = parallel_sum(space.total, opt.threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    std::vector<Fq::Elem> x(nv, 0);
    std::vector<FqPoly> spec;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      space.decode(idx, x.data());
      spec.clear();
      bool none = false;
      for (const Grouped& g : polys) {
        FqPoly u(g.by_power.size(), 0);
        for (std::size_t k = 0; k < g.by_power.size(); ++k) {
          Fq::Elem s = 0;
          for (const CTerm& t : g.by_power[k]) s = K.add(s, term_value(K, t.coeff, t.e, x.data(), last));
          u[k] = s;
        }
        trim(u);
        if (u.empty()) continue;
        if (u.size() == 1) {
          none = true;
          break;
        }
        spec.push_back(std::move(u));
      }
      if (none) continue;
      if (spec.empty()) {
        c += q;
        continue;
      }
      FqPoly g = spec[0];
      for (std::size_t i = 1; i < spec.size() && g.size() > 1; ++i) g = poly_gcd(K, g, spec[i]);
      if (g.size() > 1) c += count_distinct_roots(g, K);
    }
    return c;
  });
  return fibres + (apex_on ? 1 : 0);
}

// ---------------------------------------------------------------- lines

std::vector<std::vector<Fq::Elem>> rational_points(const SurfaceModel& m, const Fq& K, std::uint64_t cap) {
  const unsigned nv = m.ambient_dim + 1;
  std::vector<std::vector<CTerm>> polys;
  for (const HomPoly& f : m.polys) polys.push_back(compile(K, f));
  const std::vector<Fq::Elem> elems = K.elements();
  const NormalisedSpace space(K, nv, elems);
  std::vector<std::vector<Fq::Elem>> out;
  std::vector<Fq::Elem> x(nv);
  for (std::uint64_t idx = 0; idx < space.total; ++idx) {
    space.decode(idx, x.data());
    bool on = true;
    for (const auto& f : polys) {
      Fq::Elem s = 0;
      for (const CTerm& t : f) s = K.add(s, term_value(K, t.coeff, t.e, x.data(), nv));
      if (s != 0) {
        on = false;
        break;
      }
    }
    if (on) {
      if (out.size() >= cap) throw std::length_error("too many rational points for the line search");
      out.push_back(x);
    }
  }
  return out;
}

namespace {

void normalise(const Fq& K, std::vector<Fq::Elem>& v) {
  for (Fq::Elem a : v)
    if (a != 0) {
      const Fq::Elem inv = K.inv(a);
      for (Fq::Elem& b : v) b = K.mul(b, inv);
      return;
    }
}

// Reduced row echelon form of two independent rows.
std::vector<std::vector<Fq::Elem>> rref2(const Fq& K, std::vector<Fq::Elem> a, std::vector<Fq::Elem> b) {
  const std::size_t n = a.size();
  std::size_t pa = 0;
  while (pa < n && a[pa] == 0 && b[pa] == 0) ++pa;
  if (a[pa] == 0) std::swap(a, b);
  normalise(K, a);
  const Fq::Elem f = b[pa];
  for (std::size_t i = 0; i < n; ++i) b[i] = K.sub(b[i], K.mul(f, a[i]));
  normalise(K, b);
  std::size_t pb = 0;
  while (pb < n && b[pb] == 0) ++pb;
  if (pb == n) throw std::logic_error("points are not distinct");
  const Fq::Elem g = a[pb];
  for (std::size_t i = 0; i < n; ++i) a[i] = K.sub(a[i], K.mul(g, b[i]));
  return {a, b};
}

// Whether f vanishes identically on s*P + t*Q.
bool contains_line(const Fq& K, const HomPoly& f, const std::vector<Fq::Elem>& P, const std::vector<Fq::Elem>& Q) {
  const unsigned d = degree(f);
  FqPoly total(d + 1, 0);
  for (const Monomial& t : f) {
    const Fq::Elem c = K.from_int(t.coeff);
    if (c == 0) continue;
    FqPoly form{c};  // coefficient of s^(deg - k) t^k at index k
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      for (unsigned e = 0; e < t.exps[i]; ++e) {
        FqPoly next(form.size() + 1, 0);
        for (std::size_t k = 0; k < form.size(); ++k) {
          next[k] = K.add(next[k], K.mul(form[k], P[i]));
          next[k + 1] = K.add(next[k + 1], K.mul(form[k], Q[i]));
        }
        form = std::move(next);
      }
    for (std::size_t k = 0; k < form.size(); ++k) total[k] = K.add(total[k], form[k]);
  }
  return std::all_of(total.begin(), total.end(), [](Fq::Elem v) { return v == 0; });
}

}  // namespace

std::vector<std::vector<Fq::Elem>> line_points(const Fq& K, const LineFq& line) {
  std::vector<Fq::Elem> a, b;
  for (std::uint32_t v : line.rows[0]) a.push_back(K.from_index(v));
  for (std::uint32_t v : line.rows[1]) b.push_back(K.from_index(v));
  std::vector<std::vector<Fq::Elem>> out{b};
  for (Fq::Elem t : K.elements()) {
    std::vector<Fq::Elem> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = K.add(a[i], K.mul(t, b[i]));
    normalise(K, v);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<LineFq> find_lines(const SurfaceModel& m, unsigned n, const LineSearchOptions& opt) {
  validate(m);
  const Fq K(m.p, n);
  const auto pts = rational_points(m, K, opt.max_points);
  std::set<LineFq> seen;
  std::vector<LineFq> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto r = rref2(K, pts[i], pts[j]);
      LineFq line;
      for (const auto& row : r) {
        std::vector<std::uint32_t> idx;
        for (Fq::Elem v : row) idx.push_back(K.to_index(v));
        line.rows.push_back(std::move(idx));
      }
      if (!seen.insert(line).second) continue;
      bool inside = true;
      for (const HomPoly& f : m.polys) inside = inside && contains_line(K, f, r[0], r[1]);
      if (!inside) continue;
      bool meets = false;
      if (!opt.avoid.empty()) {
        for (const auto& x : line_points(K, line)) {
          for (const auto& sys : opt.avoid) {
            bool all = true;
            for (const HomPoly& f : sys) all = all && evaluate(K, f, x) == 0;
            if (all) meets = true;
          }
          if (meets) break;
        }
      }
      if (!meets) out.push_back(line);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace k3aut
