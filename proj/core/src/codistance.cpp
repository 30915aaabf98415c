#include "cotwin/codistance.hpp"

#include <algorithm>

#include "cotwin/errors.hpp"

namespace cotwin {

Codistance::Codistance(BuildingPtr building, std::vector<WeylElt> values)
    : building_(std::move(building)), values_(std::move(values)) {
  if (values_.size() != building_->size()) {
    throw Error(Errc::BuildingMismatch, "codistance has " + std::to_string(values_.size()) + " values for " +
                                            std::to_string(building_->size()) + " chambers");
  }
  for (WeylElt w : values_) {
    if (w.id >= building_->weyl().size()) throw Error(Errc::BuildingMismatch, "value outside the Weyl group");
  }
}

std::size_t Codistance::hash() const {
  std::size_t h = 14695981039346656037ull;
  for (WeylElt w : values_) h = (h ^ w.id) * 1099511628211ull;
  return h;
}

CodistanceReport validate_codistance(const Codistance& f) {
  const Building& b = f.building();
  const WeylTable& W = b.weyl();
  for (int s = 0; s < b.rank(); ++s) {
    for (std::uint32_t i = 0; i < b.panel_count(s); ++i) {
      const ResidueRef P{gen_bit(s), i};
      std::vector<WeylElt> observed;
      for (Chamber x : b.members(P)) observed.push_back(f(x));
      auto fail = [&](std::string why) { return CodistanceReport{false, P, observed, std::move(why)}; };
      const WeylElt w = observed.front();
      const WeylElt ws = W.gen_mult(w, s, Side::Right);
      const WeylElt longer = W.length(ws) > W.length(w) ? ws : w;
      int longest = 0;
      for (WeylElt v : observed) {
        if (v != w && v != ws) return fail("values on the panel are not of the form {w, ws}");
        longest += v == longer;
      }
      if (longest != 1) {
        return fail(std::to_string(longest) + " chambers carry the longer value instead of exactly one");
      }
    }
  }
  return {};
}

Codistance from_opposite_chamber(const BuildingPtr& b, Chamber c) {
  const WeylTable& W = b->weyl();
  const WeylElt r = W.longest_element(b->all_gens());
  std::vector<WeylElt> values(b->size());
  for (Chamber x = 0; x < b->size(); ++x) values[x] = W.mul(r, b->delta(c, x));
  return Codistance(b, std::move(values));
}

ResidueProfile residue_profile(const Codistance& f, ResidueRef R) {
  const Building& b = f.building();
  const WeylTable& W = b.weyl();
  ResidueProfile out;
  int top = -1, top_count = 0;
  Chamber top_chamber = 0;
  out.l_f = INT32_MAX;
  for (Chamber x : b.members(R)) {
    const int l = W.length(f(x));
    out.image.push_back(f(x));
    if (l < out.l_f) {
      out.l_f = l;
      out.A_f.clear();
    }
    if (l == out.l_f) out.A_f.push_back(x);
    if (l > top) {
      top = l;
      top_count = 0;
      top_chamber = x;
    }
    top_count += l == top;
  }
  std::sort(out.image.begin(), out.image.end());
  out.image.erase(std::unique(out.image.begin(), out.image.end()), out.image.end());
  if (top_count == 1) out.proj_f = top_chamber;
  return out;
}

Chamber proj_f(const Codistance& f, ResidueRef R) {
  const Building& b = f.building();
  const auto& m = b.members(R);
  return *std::max_element(m.begin(), m.end(), [&](Chamber x, Chamber y) {
    return b.weyl().length(f(x)) < b.weyl().length(f(y));
  });
}

std::vector<Chamber> fop(const Codistance& f) {
  std::vector<Chamber> out;
  for (Chamber x = 0; x < f.values().size(); ++x) {
    if (f(x).id == 0) out.push_back(x);
  }
  return out;
}

std::vector<Chamber> fop_c(const Codistance& f, Chamber c) {
  std::vector<Chamber> out;
  for (Chamber x = 0; x < f.values().size(); ++x) {
    if (f(x).id == 0 && f.building().delta(x, c) == f(c)) out.push_back(x);
  }
  return out;
}

bool residue_in_fop(const Codistance& f, ResidueRef R) {
  for (Chamber x : f.building().members(R)) {
    if (f(x).id == 0) return true;
  }
  return false;
}

Chamber unique_chamber(const Codistance& f, Chamber x, WeylElt w) {
  const Building& b = f.building();
  const WeylTable& W = b.weyl();
  if (W.length(W.mul(f(x), w)) != W.length(f(x)) + W.length(w)) {
    throw Error(Errc::PreconditionFailed, "l(f(x) w) != l(f(x)) + l(w)");
  }
  Chamber y = x;
  for (int s : W.word(w)) {
    const WeylElt target = W.gen_mult(f(y), s, Side::Right);
    Chamber next = y;
    for (Chamber z : b.panel_of(y, s)) {
      if (f(z) == target) {
        next = z;
        break;
      }
    }
    if (next == y) throw Error(Errc::PreconditionFailed, "codistance violates the panel axiom");
    y = next;
  }
  return y;
}

}  // namespace cotwin
