#include "k3aut/groupcert.hpp"

#include "k3aut/normal_form.hpp"
#include "k3aut/reflection.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace k3aut {

namespace {

// Small integer matrix for the word searches; products check for overflow.
struct SMat {
  std::size_t n = 0;
  std::array<std::int64_t, 64> a{};
  friend bool operator==(const SMat& x, const SMat& y) { return x.n == y.n && x.a == y.a; }
};

struct SMatHash {
  std::size_t operator()(const SMat& m) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < m.n * m.n; ++i) {
      h ^= static_cast<std::uint64_t>(m.a[i]);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

SMat to_small(const IntMat& m) {
  if (m.rows() != m.cols() || m.rows() > 8) throw std::invalid_argument("expected a square matrix of size <= 8");
  SMat s;
  s.n = m.rows();
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) {
      if (!m(i, j).fits_slong_p()) throw std::overflow_error("matrix entry exceeds 64 bits");
      s.a[i * s.n + j] = m(i, j).get_si();
    }
  return s;
}

SMat small_identity(std::size_t n) {
  SMat s;
  s.n = n;
  for (std::size_t i = 0; i < n; ++i) s.a[i * n + i] = 1;
  return s;
}

// False on overflow.
bool mul(const SMat& x, const SMat& y, SMat& out) {
  const std::size_t n = x.n;
  out.n = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) {
        std::int64_t p;
        if (__builtin_mul_overflow(x.a[i * n + k], y.a[k * n + j], &p)) return false;
        if (__builtin_add_overflow(s, p, &s)) return false;
      }
      out.a[i * n + j] = s;
    }
  return true;
}

IntMat isometry_inverse(const IntMat& g) { return inverse_unimodular(g); }

std::uint64_t fnv(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

unsigned popcount64(std::uint64_t x) { return static_cast<unsigned>(__builtin_popcountll(x)); }

// Coordinates of x mod 2 as a bitmask (bit i = coordinate i).
unsigned mod2_mask(const IntVec& v) {
  unsigned m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mpz_odd_p(v[i].get_mpz_t())) m |= 1u << i;
  return m;
}

IntVec from_mask(unsigned m, std::size_t n) {
  IntVec v(n, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    if (m >> i & 1u) v[i] = 1;
  return v;
}

F2Subspace span_of(const std::vector<unsigned>& vs) {
  F2Subspace s = 1;  // the zero vector
  for (unsigned v : vs) {
    F2Subspace t = s;
    for (unsigned x = 0; x < 64; ++x)
      if (s >> x & 1u) t |= F2Subspace(1) << (x ^ v);
    s = t;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- generators

void GenSet::validate() const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!preserves_gram(gens[i], lattice.gram()))
      throw std::invalid_argument("generator " + std::to_string(i) + " does not preserve the form");
}

GenSet o_ln_generators() {
  GenSet G;
  G.lattice = direct_sum(hyperbolic_plane(), a1_power(4));
  const IntMat& N = G.lattice.gram();
  IntMat swap = IntMat::identity(6), cyc(6, 6);
  swap(2, 2) = swap(3, 3) = 0;
  swap(2, 3) = swap(3, 2) = 1;
  cyc(0, 0) = cyc(1, 1) = 1;
  // e3 -> e4 -> e5 -> e6 -> e3
  cyc(3, 2) = cyc(4, 3) = cyc(5, 4) = cyc(2, 5) = 1;
  G.gens = {swap, cyc, reflection_matrix(N, vec({-1, 1, 0, 0, 0, 0})), reflection_matrix(N, vec({0, 0, 1, 0, 0, 0})),
            reflection_matrix(N, vec({1, 0, -1, 0, 0, 0})), -IntMat::identity(6)};
  G.labels = {"(e3 e4)", "(e3 e4 e5 e6)", "s[e2-e1]", "s[e3]", "s[e1-e3]", "-1"};
  G.validate();
  return G;
}

// ---------------------------------------------------------------- sublattice orbit

std::vector<F2Subspace> codim2_subspaces(unsigned n) {
  if (n < 2 || n > 6) throw std::invalid_argument("dimension must be in 2..6");
  // Annihilators of 2-dimensional subspaces of the dual.
  const unsigned full = 1u << n;
  std::set<F2Subspace> out;
  for (unsigned u = 1; u < full; ++u)
    for (unsigned v = u + 1; v < full; ++v) {
      F2Subspace W = 0;
      for (unsigned x = 0; x < full; ++x)
        if (popcount64(x & u) % 2 == 0 && popcount64(x & v) % 2 == 0) W |= F2Subspace(1) << x;
      out.insert(W);
    }
  return {out.begin(), out.end()};
}

F2Subspace act_on_subspace(const IntMat& g, F2Subspace W) {
  const std::size_t n = g.rows();
  F2Subspace out = 0;
  for (unsigned x = 0; x < (1u << n); ++x)
    if (W >> x & 1u) out |= F2Subspace(1) << mod2_mask(g * from_mask(x, n));
  return out;
}

F2Subspace subspace_of_sublattice(const IntMat& basis_rows) {
  const std::size_t n = basis_rows.cols();
  if (n > 6 || basis_rows.rows() != n) throw std::invalid_argument("expected a full-rank sublattice of rank <= 6");
  const auto inv = smith_normal_form(basis_rows).invariant_factors();
  std::size_t twos = 0;
  for (const Int& d : inv) {
    if (d == 2) {
      ++twos;
    } else if (d != 1) {
      throw std::invalid_argument("quotient is not (Z/2)^2");
    }
  }
  if (twos != 2) throw std::invalid_argument("quotient is not (Z/2)^2");
  std::vector<unsigned> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(mod2_mask(basis_rows.row(i)));
  const F2Subspace W = span_of(rows);
  if (popcount64(W) != (1u << (n - 2))) throw std::logic_error("mod-2 image has the wrong dimension");
  return W;
}

StabilizerResult sublattice_stabilizer(const GenSet& G, const IntMat& target_basis_rows, std::size_t cap) {
  G.validate();
  const std::size_t n = G.lattice.rank();
  StabilizerResult res;
  res.permutation_degree = codim2_subspaces(static_cast<unsigned>(n)).size();
  const F2Subspace target = subspace_of_sublattice(target_basis_rows);
  std::unordered_map<F2Subspace, std::size_t> where{{target, 0}};
  res.orbit.push_back(target);
  res.transversal.push_back(IntMat::identity(n));
  for (std::size_t i = 0; i < res.orbit.size(); ++i)
    for (const IntMat& s : G.gens) {
      const F2Subspace img = act_on_subspace(s, res.orbit[i]);
      if (where.emplace(img, res.orbit.size()).second) {
        if (res.orbit.size() >= cap) throw std::runtime_error("sublattice orbit exceeds the cap");
        res.orbit.push_back(img);
        res.transversal.push_back(s * res.transversal[i]);
      }
    }
  std::vector<IntMat> inv;
  for (const IntMat& u : res.transversal) inv.push_back(isometry_inverse(u));
  res.stabilizer.lattice = G.lattice;
  std::unordered_set<IntMat, IntMatHash> seen;
  const IntMat id = IntMat::identity(n);
  for (std::size_t i = 0; i < res.orbit.size(); ++i)
    for (std::size_t j = 0; j < G.gens.size(); ++j) {
      ++res.schreier_candidates;
      const std::size_t k = where.at(act_on_subspace(G.gens[j], res.orbit[i]));
      IntMat h = inv[k] * G.gens[j] * res.transversal[i];
      if (act_on_subspace(h, target) != target) throw std::logic_error("Schreier generator does not fix the target");
      if (h == id || !seen.insert(h).second) continue;
      res.stabilizer.gens.push_back(h);
      res.stabilizer.labels.push_back("u" + std::to_string(k) + "^-1 g" + std::to_string(j) + " u" + std::to_string(i));
    }
  return res;
}

// ---------------------------------------------------------------- words

IntMat evaluate_word(const std::vector<IntMat>& gens, const Word& w) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  IntMat p = IntMat::identity(gens.front().rows());
  for (int l : w) {
    const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    if (l == 0 || i >= gens.size()) throw std::invalid_argument("letter out of range");
    p = p * (l > 0 ? gens[i] : isometry_inverse(gens[i]));
  }
  return p;
}

namespace {

struct Alphabet {
  std::vector<int> letters;      // signed letters
  std::vector<SMat> mats;        // matrix of each letter
  std::vector<std::size_t> inv;  // index of the inverse letter
};

// Letters for the given generator indices (1-based labels); involutions get one letter.
Alphabet make_alphabet(const std::vector<IntMat>& gens, const std::vector<std::size_t>& which) {
  Alphabet A;
  for (std::size_t i : which) {
    const IntMat& g = gens[i];
    const bool invol = g * g == IntMat::identity(g.rows());
    A.letters.push_back(static_cast<int>(i) + 1);
    A.mats.push_back(to_small(g));
    if (invol) {
      A.inv.push_back(A.letters.size() - 1);
    } else {
      A.letters.push_back(-(static_cast<int>(i) + 1));
      A.mats.push_back(to_small(isometry_inverse(g)));
      A.inv.push_back(A.letters.size() - 1);
      A.inv.push_back(A.letters.size() - 2);
    }
  }
  return A;
}

// Calls visit(word as letter indices, product) for every freely reduced word of length <= len.
// Words whose product overflows are skipped along with their extensions.
void for_each_word(const Alphabet& A, std::size_t dim, unsigned len,
                   const std::function<void(const std::vector<std::size_t>&, const SMat&)>& visit) {
  std::vector<std::size_t> w;
  std::function<void(const SMat&)> rec = [&](const SMat& p) {
    visit(w, p);
    if (w.size() == len) return;
    for (std::size_t l = 0; l < A.letters.size(); ++l) {
      if (!w.empty() && A.inv[w.back()] == l) continue;
      SMat q;
      if (!mul(p, A.mats[l], q)) continue;
      w.push_back(l);
      rec(q);
      w.pop_back();
    }
  };
  rec(small_identity(dim));
}

Word to_word(const Alphabet& A, const std::vector<std::size_t>& idx) {
  Word w;
  for (std::size_t i : idx) w.push_back(A.letters[i]);
  return w;
}

// Inverse of a word, with involution letters kept positive.
Word inverse_word(const Word& w, const std::vector<IntMat>& gens) {
  Word r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const IntMat& g = gens[static_cast<std::size_t>(std::abs(*it)) - 1];
    r.push_back(g * g == IntMat::identity(g.rows()) ? std::abs(*it) : -*it);
  }
  return r;
}

}  // namespace

ReducedGenSet reduce_generators(const GenSet& G, unsigned word_cap) {
  G.validate();
  ReducedGenSet out;
  out.kept.lattice = G.lattice;
  if (G.gens.empty()) return out;
  const std::size_t n = G.lattice.rank();
  const IntMat id = IntMat::identity(n);
  std::vector<IntMat> gens;
  std::vector<std::string> labels;
  std::unordered_set<IntMat, IntMatHash> seen;
  for (std::size_t i = 0; i < G.gens.size(); ++i) {
    if (G.gens[i] == id || !seen.insert(G.gens[i]).second) continue;
    gens.push_back(G.gens[i]);
    labels.push_back(i < G.labels.size() ? G.labels[i] : "g" + std::to_string(i));
  }
  std::vector<char> alive(gens.size(), 1);
  std::map<std::size_t, Word> witness;  // over 1-based indices into gens
  const unsigned left = word_cap / 2, right = word_cap - left;
  for (std::size_t t = gens.size(); t-- > 0;) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (alive[i] && i != t) others.push_back(i);
    if (others.empty()) continue;
    const Alphabet A = make_alphabet(gens, others);
    std::unordered_map<SMat, Word, SMatHash> table;
    for_each_word(A, n, right, [&](const std::vector<std::size_t>& w, const SMat& p) {
      table.emplace(p, to_word(A, w));
    });
    const SMat target = to_small(gens[t]);
    std::optional<Word> found;
    for_each_word(A, n, left, [&](const std::vector<std::size_t>& w, const SMat&) {
      if (found) return;
      // product of the inverse word times the target
      SMat p = small_identity(n);
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        SMat q;
        if (!mul(p, A.mats[A.inv[*it]], q)) return;
        p = q;
      }
      SMat q;
      if (!mul(p, target, q)) return;
      auto hit = table.find(q);
      if (hit != table.end()) {
        Word full = to_word(A, w);
        full.insert(full.end(), hit->second.begin(), hit->second.end());
        found = full;
      }
    });
    if (found) {
      alive[t] = 0;
      witness[t] = *found;
    }
  }
  // Rewrite witnesses over the final generating set.
  std::function<Word(std::size_t)> expand = [&](std::size_t t) {
    Word r;
    for (int l : witness.at(t)) {
      const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
      if (alive[i]) {
        r.push_back(l);
      } else {
        const Word sub = expand(i);
        const Word use = l > 0 ? sub : inverse_word(sub, gens);
        r.insert(r.end(), use.begin(), use.end());
      }
    }
    return r;
  };
  std::vector<int> renumber(gens.size(), 0);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (alive[i]) {
      out.kept.gens.push_back(gens[i]);
      out.kept.labels.push_back(labels[i]);
      renumber[i] = static_cast<int>(out.kept.gens.size());
    }
  for (const auto& [t, w] : witness) {
    (void)w;
    Word r = expand(t);
    for (int& l : r) l = l > 0 ? renumber[static_cast<std::size_t>(l) - 1] : -renumber[static_cast<std::size_t>(-l) - 1];
    if (evaluate_word(out.kept.gens, r) != gens[t]) throw std::logic_error("witness word does not evaluate correctly");
    out.dropped.push_back(gens[t]);
    out.witnesses.push_back(std::move(r));
  }
  return out;
}

std::vector<Word> discover_relations(const std::vector<IntMat>& gens, unsigned maxlen,
                                     const std::vector<IntMat>& extra, unsigned extlen, std::size_t word_cap) {
  std::vector<IntMat> all = gens;
  all.insert(all.end(), extra.begin(), extra.end());
  if (all.empty()) return {};
  const std::size_t n = all.front().rows();
  const SMat id = small_identity(n);
  std::set<Word> found;
  std::size_t visited = 0;
  auto canonical = [&](const Word& w) {
    Word best;
    for (const Word& base : {w, inverse_word(w, all)})
      for (std::size_t r = 0; r < base.size(); ++r) {
        Word rot(base.begin() + static_cast<long>(r), base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(r));
        if (best.empty() || rot < best) best = rot;
      }
    return best;
  };
  auto scan = [&](const std::vector<std::size_t>& which, unsigned len, bool need_extra) {
    const Alphabet A = make_alphabet(all, which);
    for_each_word(A, n, len, [&](const std::vector<std::size_t>& w, const SMat& p) {
      if (++visited > word_cap) throw std::runtime_error("relation search exceeded its word cap");
      if (w.empty() || !(p == id)) return;
      // cyclically reduced only
      if (w.size() > 1 && A.inv[w.back()] == w.front()) return;
      const Word word = to_word(A, w);
      if (need_extra && std::none_of(word.begin(), word.end(), [&](int l) {
            return static_cast<std::size_t>(std::abs(l)) > gens.size();
          }))
        return;
      found.insert(canonical(word));
    });
  };
  std::vector<std::size_t> g_idx(gens.size()), all_idx(all.size());
  for (std::size_t i = 0; i < gens.size(); ++i) g_idx[i] = i;
  for (std::size_t i = 0; i < all.size(); ++i) all_idx[i] = i;
  if (!gens.empty()) scan(g_idx, maxlen, false);
  if (!extra.empty()) scan(all_idx, extlen, true);
  std::vector<Word> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

// ---------------------------------------------------------------- coset certificates

namespace {

// The element w g with w g y in the chamber of y: equal for g, g' exactly when they
// lie in the same right coset of R, given that the chamber is a fundamental domain.
IntMat coset_key(const IntMat& gram, const IntMat& g, const std::vector<IntVec>& walls,
                 const std::vector<IntMat>& reflections, const IntVec& y) {
  const DescentResult d = chamber_descent(gram, g, y, walls, reflections);
  return d.flipped ? IntMat(-d.reduced) : d.reduced;
}

}  // namespace

CertificationResult certify_finite_quotient(const IntMat& gram, const std::vector<IntMat>& gens,
                                            const std::vector<IntVec>& walls,
                                            const std::vector<IntMat>& reflections, const IntVec& y,
                                            std::size_t cap) {
  CertificationResult res;
  if (!is_chamber_interior(gram, y, walls)) throw std::invalid_argument("base point is not inside the chamber");
  std::vector<IntMat> moves = gens;
  moves.insert(moves.end(), reflections.begin(), reflections.end());
  FiniteIndexCertificate cert;
  std::unordered_map<IntMat, std::size_t, IntMatHash> where;
  try {
    const IntMat start = coset_key(gram, IntMat::identity(gram.rows()), walls, reflections, y);
    where.emplace(start, 0);
    cert.representatives.push_back(start);
    for (std::size_t r = 0; r < cert.representatives.size(); ++r) {
      std::vector<std::size_t> row;
      for (const IntMat& s : moves) {
        ++res.explored;
        const IntMat key = coset_key(gram, cert.representatives[r] * s, walls, reflections, y);
        auto [it, fresh] = where.emplace(key, cert.representatives.size());
        if (fresh) {
          if (cert.representatives.size() >= cap) {
            res.reason = "coset cap of " + std::to_string(cap) + " reached";
            return res;
          }
          cert.representatives.push_back(key);
        }
        row.push_back(it->second);
      }
      cert.action.push_back(std::move(row));
    }
  } catch (const std::runtime_error& e) {
    res.reason = e.what();
    return res;
  }
  std::uint64_t h = fnv("k3aut-cosets-v1");
  for (const IntMat& m : cert.representatives) h = fnv(to_string(m), h);
  for (const auto& row : cert.action)
    for (std::size_t t : row) h = fnv(std::to_string(t) + ",", h);
  cert.transcript_hash = h;
  res.status = CertStatus::Certified;
  res.certificate = std::move(cert);
  return res;
}

bool verify_certificate(const FiniteIndexCertificate& cert, const IntMat& gram, const std::vector<IntMat>& gens,
                        const std::vector<IntVec>& walls, const std::vector<IntMat>& reflections,
                        const IntVec& y) {
  std::vector<IntMat> moves = gens;
  moves.insert(moves.end(), reflections.begin(), reflections.end());
  if (cert.action.size() != cert.representatives.size()) return false;
  std::vector<IntMat> inv;
  for (const IntMat& r : cert.representatives) inv.push_back(isometry_inverse(r));
  for (std::size_t r = 0; r < cert.representatives.size(); ++r) {
    if (cert.action[r].size() != moves.size()) return false;
    for (std::size_t s = 0; s < moves.size(); ++s) {
      const std::size_t t = cert.action[r][s];
      if (t >= cert.representatives.size()) return false;
      const IntMat q = cert.representatives[r] * moves[s] * inv[t];
      if (chamber_descent(gram, q, y, walls, reflections).outcome != DescentOutcome::Member) return false;
    }
  }
  // The identity coset must be present.
  for (const IntMat& r : cert.representatives)
    if (chamber_descent(gram, r, y, walls, reflections).outcome == DescentOutcome::Member) return true;
  return false;
}

}  // namespace k3aut
