#include "ucslab/types.hpp"

#include <algorithm>
#include <sstream>

namespace ucslab {

Family::Family(GroundSet ground, std::vector<Mask> members)
    : ground_(ground), members_(std::move(members)) {
  if (!std::is_sorted(members_.begin(), members_.end()))
    throw std::invalid_argument("family members must be sorted");
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw std::invalid_argument("duplicate family member");
  for (Mask m : members_)
    if (!ground_.fits(m))
      throw std::invalid_argument("member mask exceeds ground set");
  if (!is_union_closed(members_, ground_))
    throw std::invalid_argument("not a union-closed family with empty and full set");
}

bool Family::contains(Mask m) const {
  return std::binary_search(members_.begin(), members_.end(), m);
}

std::string Family::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members_[i]);
  }
  return out;
}

Family Family::from_text(const std::string& line, GroundSet ground) {
  std::vector<Mask> members;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim spaces
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty mask token");
    tok = tok.substr(b, e - b + 1);
    int base = 10;
    if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
      base = 16;
      tok = tok.substr(2);
    }
    std::size_t pos = 0;
    const Mask m = std::stoull(tok, &pos, base);
    if (pos != tok.size()) throw std::invalid_argument("bad mask token: " + tok);
    members.push_back(m);
  }
  std::sort(members.begin(), members.end());
  return Family(ground, std::move(members));
}

bool is_union_closed(const std::vector<Mask>& members, GroundSet ground) {
  const Mask full = ground.full_mask();
  if (members.empty()) return false;
  if (members.front() != 0) return false;
  if (!std::binary_search(members.begin(), members.end(), full)) return false;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Mask u = members[i] | members[j];
      if (!std::binary_search(members.begin(), members.end(), u)) return false;
    }
  return true;
}

Family union_closure(const std::vector<Mask>& seed_sets, GroundSet ground) {
  for (Mask m : seed_sets)
    if (!ground.fits(m))
      throw std::invalid_argument("seed mask exceeds ground set");

  std::vector<Mask> work = seed_sets;
  work.push_back(0);
  work.push_back(ground.full_mask());
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());

  // Pairwise-union fixpoint.  New unions are appended and re-swept until
  // nothing is added; the seed collections here are tiny.
  std::vector<Mask> closed = work;
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = closed.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i + 1; j < sz; ++j) {
        const Mask u = closed[i] | closed[j];
        if (std::find(closed.begin(), closed.end(), u) == closed.end()) {
          closed.push_back(u);
          grew = true;
        }
      }
  }
  std::sort(closed.begin(), closed.end());
  return Family(ground, std::move(closed));
}

}  // namespace ucslab
