#include "latticeflux/strings.hpp"

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <utility>

namespace latticeflux {

namespace {

struct RawTerm {
  std::complex<double> coeff;
  std::vector<FermiFactor> factors;
};

// Rewrites one raw factor product into canonical form, accumulating the
// resulting terms. Same-site pairs collapse exactly; cross-site swaps of two
// f-type factors flip the sign; Number factors commute through everything.
void accumulate_canonical(RawTerm term,
                          std::map<std::vector<FermiFactor>, std::complex<double>>& acc) {
  std::vector<RawTerm> work;
  work.push_back(std::move(term));
  while (!work.empty()) {
    RawTerm t = std::move(work.back());
    work.pop_back();
    if (t.coeff == 0.0) continue;
    bool rewritten = false;
    for (std::size_t i = 0; i + 1 < t.factors.size(); ++i) {
      FermiFactor& a = t.factors[i];
      FermiFactor& b = t.factors[i + 1];
      if (a.site == b.site) {
        rewritten = true;
        auto with_pair_replaced = [&](std::optional<FermiKind> repl, std::complex<double> scale) {
          RawTerm nt;
          nt.coeff = t.coeff * scale;
          nt.factors.assign(t.factors.begin(), t.factors.begin() + i);
          if (repl) nt.factors.push_back({a.site, *repl});
          nt.factors.insert(nt.factors.end(), t.factors.begin() + i + 2, t.factors.end());
          work.push_back(std::move(nt));
        };
        using K = FermiKind;
        if (a.kind == K::Create && b.kind == K::Annihilate) {
          with_pair_replaced(std::nullopt, 0.5);  // f†f = (1 + N)/2
          with_pair_replaced(K::Number, 0.5);
        } else if (a.kind == K::Annihilate && b.kind == K::Create) {
          with_pair_replaced(std::nullopt, 0.5);  // ff† = (1 − N)/2
          with_pair_replaced(K::Number, -0.5);
        } else if (a.kind == K::Create && b.kind == K::Number) {
          with_pair_replaced(K::Create, -1.0);
        } else if (a.kind == K::Number && b.kind == K::Create) {
          with_pair_replaced(K::Create, 1.0);
        } else if (a.kind == K::Annihilate && b.kind == K::Number) {
          with_pair_replaced(K::Annihilate, 1.0);
        } else if (a.kind == K::Number && b.kind == K::Annihilate) {
          with_pair_replaced(K::Annihilate, -1.0);
        } else if (a.kind == K::Number && b.kind == K::Number) {
          with_pair_replaced(std::nullopt, 1.0);
        }
        // Create·Create and Annihilate·Annihilate vanish: no branch pushed.
        break;
      }
      if (a.site > b.site) {
        rewritten = true;
        if (a.kind != FermiKind::Number && b.kind != FermiKind::Number) t.coeff = -t.coeff;
        std::swap(a, b);
        work.push_back(std::move(t));
        break;
      }
    }
    if (!rewritten) acc[t.factors] += t.coeff;
  }
}

FermionOperator from_accumulator(std::map<std::vector<FermiFactor>, std::complex<double>>&& acc) {
  FermionOperator out;
  out.reserve(acc.size());
  for (auto& [factors, coeff] : acc) {
    if (coeff == 0.0) continue;
    out.push_back({coeff, factors});
  }
  return out;
}

// Product of two single-site spin factors, left factor first. Entries are
// (scale, replacement); a missing replacement means identity.
using OnSite = std::vector<std::pair<std::complex<double>, std::optional<PauliKind>>>;

OnSite onsite_product(PauliKind a, PauliKind b) {
  using P = PauliKind;
  if (a == P::Plus) {
    if (b == P::Plus) return {};
    if (b == P::Minus) return {{0.5, std::nullopt}, {-0.5, P::Z}};  // σ+σ− = (1 − Z)/2
    return {{1.0, P::Plus}};                                        // σ+Z = σ+
  }
  if (a == P::Minus) {
    if (b == P::Plus) return {{0.5, std::nullopt}, {0.5, P::Z}};  // σ−σ+ = (1 + Z)/2
    if (b == P::Minus) return {};
    return {{-1.0, P::Minus}};  // σ−Z = −σ−
  }
  if (b == P::Plus) return {{-1.0, P::Plus}};  // Zσ+ = −σ+
  if (b == P::Minus) return {{1.0, P::Minus}};
  return {{1.0, std::nullopt}};
}

std::vector<PauliString> string_product(const PauliString& a, const PauliString& b) {
  std::vector<PauliString> branches{{a.coeff * b.coeff, {}}};
  auto ia = a.factors.begin();
  auto ib = b.factors.begin();
  auto append_all = [&](int site, PauliKind kind) {
    for (PauliString& br : branches) br.factors.emplace(site, kind);
  };
  while (ia != a.factors.end() || ib != b.factors.end()) {
    if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
      append_all(ia->first, ia->second);
      ++ia;
    } else if (ia == a.factors.end() || ib->first < ia->first) {
      append_all(ib->first, ib->second);
      ++ib;
    } else {
      const OnSite table = onsite_product(ia->second, ib->second);
      std::vector<PauliString> next;
      next.reserve(branches.size() * table.size());
      for (const PauliString& br : branches)
        for (const auto& [scale, repl] : table) {
          PauliString nb = br;
          nb.coeff *= scale;
          if (repl) nb.factors.emplace(ia->first, *repl);
          next.push_back(std::move(nb));
        }
      branches = std::move(next);
      ++ia;
      ++ib;
    }
  }
  return branches;
}

std::vector<int> order_positions(const std::vector<int>& ordering, int max_site,
                                 const char* caller) {
  // position[s] = 1-based string position of site s; identity when no
  // explicit ordering is given.
  if (ordering.empty()) {
    std::vector<int> pos(max_site + 1);
    for (int s = 1; s <= max_site; ++s) pos[s] = s;
    return pos;
  }
  const int m = static_cast<int>(ordering.size());
  if (max_site > m)
    throw std::invalid_argument(std::string(caller) + "(): operator references a site "
                                                      "outside the ordering");
  std::vector<int> pos(m + 1, 0);
  for (int k = 0; k < m; ++k) {
    const int site = ordering[k];
    if (site < 1 || site > m || pos[site] != 0)
      throw std::invalid_argument(std::string(caller) + "(): ordering must be a permutation "
                                                        "of 1..n_sites");
    pos[site] = k + 1;
  }
  return pos;
}

int max_site_of(const PauliOperator& op) {
  int m = 0;
  for (const PauliString& t : op)
    for (const auto& [site, kind] : t.factors) m = std::max(m, site);
  return m;
}

int max_site_of(const FermionOperator& op) {
  int m = 0;
  for (const FermionString& t : op)
    for (const FermiFactor& f : t.factors) m = std::max(m, f.site);
  return m;
}

void format_coeff(std::string& out, std::complex<double> c) {
  double re = c.real(), im = c.imag();
  if (re == 0.0) re = 0.0;  // normalize the sign of zero for stable text
  if (im == 0.0) im = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", re, im);
  out += buf;
}

}  // namespace

PauliOperator pauli_simplify(const PauliOperator& op) {
  std::map<std::map<int, PauliKind>, std::complex<double>> acc;
  for (const PauliString& t : op) acc[t.factors] += t.coeff;
  PauliOperator out;
  out.reserve(acc.size());
  for (auto& [factors, coeff] : acc) {
    if (coeff == 0.0) continue;
    out.push_back({coeff, factors});
  }
  return out;
}

FermionOperator fermi_simplify(const FermionOperator& op) {
  std::map<std::vector<FermiFactor>, std::complex<double>> acc;
  for (const FermionString& t : op) accumulate_canonical({t.coeff, t.factors}, acc);
  return from_accumulator(std::move(acc));
}

PauliOperator pauli_product(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator raw;
  for (const PauliString& ta : a)
    for (const PauliString& tb : b)
      for (PauliString& br : string_product(ta, tb)) raw.push_back(std::move(br));
  return pauli_simplify(raw);
}

FermionOperator fermi_product(const FermionOperator& a, const FermionOperator& b) {
  std::map<std::vector<FermiFactor>, std::complex<double>> acc;
  for (const FermionString& ta : a)
    for (const FermionString& tb : b) {
      RawTerm raw{ta.coeff * tb.coeff, ta.factors};
      raw.factors.insert(raw.factors.end(), tb.factors.begin(), tb.factors.end());
      accumulate_canonical(std::move(raw), acc);
    }
  return from_accumulator(std::move(acc));
}

PauliOperator pauli_adjoint(const PauliOperator& op) {
  PauliOperator out;
  out.reserve(op.size());
  for (const PauliString& t : op) {
    PauliString a;
    a.coeff = std::conj(t.coeff);
    for (const auto& [site, kind] : t.factors)
      a.factors.emplace(site, kind == PauliKind::Plus    ? PauliKind::Minus
                              : kind == PauliKind::Minus ? PauliKind::Plus
                                                         : PauliKind::Z);
    out.push_back(std::move(a));
  }
  return pauli_simplify(out);
}

FermionOperator fermi_adjoint(const FermionOperator& op) {
  FermionOperator raw;
  raw.reserve(op.size());
  for (const FermionString& t : op) {
    FermionString a;
    a.coeff = std::conj(t.coeff);
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
      a.factors.push_back({it->site, it->kind == FermiKind::Create     ? FermiKind::Annihilate
                                     : it->kind == FermiKind::Annihilate ? FermiKind::Create
                                                                         : FermiKind::Number});
    raw.push_back(std::move(a));
  }
  return fermi_simplify(raw);
}

PauliOperator pauli_add(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator sum = a;
  sum.insert(sum.end(), b.begin(), b.end());
  return pauli_simplify(sum);
}

FermionOperator fermi_add(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator sum = a;
  sum.insert(sum.end(), b.begin(), b.end());
  return fermi_simplify(sum);
}

PauliOperator pauli_term(std::complex<double> coeff,
                         std::vector<std::pair<int, PauliKind>> factors) {
  PauliString t;
  t.coeff = coeff;
  for (const auto& [site, kind] : factors) {
    if (site < 1) throw std::invalid_argument("pauli_term(): sites are 1-based");
    if (!t.factors.emplace(site, kind).second)
      throw std::invalid_argument("pauli_term(): repeated site, use pauli_product instead");
  }
  return {std::move(t)};
}

FermionOperator fermi_term(std::complex<double> coeff, std::vector<FermiFactor> factors) {
  for (const FermiFactor& f : factors)
    if (f.site < 1) throw std::invalid_argument("fermi_term(): sites are 1-based");
  return fermi_simplify({{coeff, std::move(factors)}});
}

FermionOperator jw_transform(const PauliOperator& op, const std::vector<int>& ordering) {
  const int max_site = ordering.empty() ? max_site_of(op) : static_cast<int>(ordering.size());
  const std::vector<int> pos = order_positions(ordering, max_site_of(op) > max_site
                                                             ? max_site_of(op)
                                                             : max_site,
                                               "jw_transform");
  FermionOperator result;
  for (const PauliString& t : op) {
    FermionOperator term{{t.coeff, {}}};
    for (const auto& [site, kind] : t.factors) {
      FermionString image;
      if (kind == PauliKind::Z) {
        image.coeff = -1.0;
        image.factors.push_back({site, FermiKind::Number});
      } else {
        int preds = 0;
        for (int j = 1; j <= max_site; ++j)
          if (j != site && pos[j] < pos[site]) {
            image.factors.push_back({j, FermiKind::Number});
            ++preds;
          }
        image.coeff = (preds % 2 == 0) ? 1.0 : -1.0;
        image.factors.push_back(
            {site, kind == PauliKind::Plus ? FermiKind::Create : FermiKind::Annihilate});
      }
      term = fermi_product(term, {image});
    }
    result.insert(result.end(), term.begin(), term.end());
  }
  return fermi_simplify(result);
}

PauliOperator jw_inverse(const FermionOperator& op, const std::vector<int>& ordering) {
  const FermionOperator canon = fermi_simplify(op);
  const int max_site = ordering.empty() ? max_site_of(canon) : static_cast<int>(ordering.size());
  const std::vector<int> pos = order_positions(ordering, max_site_of(canon) > max_site
                                                             ? max_site_of(canon)
                                                             : max_site,
                                               "jw_inverse");
  PauliOperator result;
  for (const FermionString& t : canon) {
    PauliOperator term{{t.coeff, {}}};
    for (const FermiFactor& f : t.factors) {
      PauliString image;
      if (f.kind == FermiKind::Number) {
        image.coeff = -1.0;
        image.factors.emplace(f.site, PauliKind::Z);
      } else {
        image.coeff = 1.0;
        for (int j = 1; j <= max_site; ++j)
          if (j != f.site && pos[j] < pos[f.site]) image.factors.emplace(j, PauliKind::Z);
        image.factors.emplace(f.site,
                              f.kind == FermiKind::Create ? PauliKind::Plus : PauliKind::Minus);
      }
      term = pauli_product(term, {image});
    }
    result.insert(result.end(), term.begin(), term.end());
  }
  return pauli_simplify(result);
}

Eigen::SparseMatrix<std::complex<double>> matrix_representation(const PauliOperator& op,
                                                                int n_sites) {
  if (n_sites < 1 || n_sites > 14)
    throw std::invalid_argument("matrix_representation(): n_sites must be in 1..14");
  if (max_site_of(op) > n_sites)
    throw std::invalid_argument("matrix_representation(): operator references a site beyond "
                                "n_sites");
  const long dim = 1L << n_sites;
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (const PauliString& t : op) {
    for (long mask = 0; mask < dim; ++mask) {
      std::complex<double> c = t.coeff;
      long out_mask = mask;
      bool dead = false;
      for (const auto& [site, kind] : t.factors) {
        const long bit = 1L << (n_sites - site);  // site 1 is the most significant bit
        const bool occupied = mask & bit;
        if (kind == PauliKind::Z) {
          if (occupied) c = -c;
        } else if (kind == PauliKind::Plus) {
          if (occupied) { dead = true; break; }
          out_mask |= bit;
        } else {
          if (!occupied) { dead = true; break; }
          out_mask &= ~bit;
        }
      }
      if (!dead && c != 0.0) triplets.emplace_back(out_mask, mask, c);
    }
  }
  Eigen::SparseMatrix<std::complex<double>> m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Eigen::SparseMatrix<std::complex<double>> matrix_representation(const FermionOperator& op,
                                                                int n_sites,
                                                                const std::vector<int>& ordering) {
  return matrix_representation(jw_inverse(op, ordering), n_sites);
}

std::string to_text(const PauliOperator& op) {
  std::string out;
  for (const PauliString& t : pauli_simplify(op)) {
    format_coeff(out, t.coeff);
    if (t.factors.empty()) out += " 1";
    for (const auto& [site, kind] : t.factors) {
      out += kind == PauliKind::Plus ? " s+" : kind == PauliKind::Minus ? " s-" : " z";
      out += std::to_string(site);
    }
    out += '\n';
  }
  return out;
}

std::string to_text(const FermionOperator& op) {
  std::string out;
  for (const FermionString& t : fermi_simplify(op)) {
    format_coeff(out, t.coeff);
    if (t.factors.empty()) out += " 1";
    for (const FermiFactor& f : t.factors) {
      out += f.kind == FermiKind::Create ? " f+" : f.kind == FermiKind::Annihilate ? " f-" : " n";
      out += std::to_string(f.site);
    }
    out += '\n';
  }
  return out;
}

}  // namespace latticeflux
