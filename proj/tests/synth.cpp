#include "synth.hpp"

#include <map>
#include <stdexcept>

#include "heckefield/numutil.hpp"

namespace heckefield::synth {

NewformRecord make_record(const SynthSpec& spec) {
  SyntheticRep rep(spec.kind, spec.twist_order);
  ConreyChar chi(spec.char_modulus, spec.char_index);
  if (chi.order() != rep.det_char_order())
    throw std::invalid_argument(spec.label + ": character order " +
                                std::to_string(chi.order()) + " != representation d = " +
                                std::to_string(rep.det_char_order()));
  if (chi.parity() != -1)
    throw std::invalid_argument(spec.label + ": nebentypus must be odd");

  const auto& elements = rep.base_group().elements();
  long m = spec.twist_order;

  // conjugacy fibers keyed by the determinant-character value
  std::map<std::pair<long, long>, std::vector<std::pair<long, long>>> fibers;
  for (long i = 0; i < static_cast<long>(elements.size()); ++i)
    for (long c = 0; c < m; ++c) fibers[rep.det_char_value(i, c)].emplace_back(i, c);
  std::map<std::pair<long, long>, size_t> cursor;

  NewformRecord rec;
  rec.label = spec.label;
  rec.level = chi.modulus();
  rec.character = chi;
  rec.ambient = rep.ambient_modulus();

  long d = chi.order();
  for (long p = 2; static_cast<long>(rec.ap.size()) < spec.num_primes; ++p) {
    if (!is_prime(p) || rec.level % p == 0) continue;
    long e = chi.value_exponent(p);
    long g = e == 0 ? d : gcd64(e, d);
    std::pair<long, long> key = e == 0 ? std::make_pair(0L, 1L) : std::make_pair(e / g, d / g);
    auto fiber = fibers.find(key);
    if (fiber == fibers.end() || fiber->second.empty())
      throw std::logic_error(spec.label + ": no group element realizes chi(p)");
    auto [i, c] = fiber->second[cursor[key]++ % fiber->second.size()];
    CycElt ap = CycElt::root_of_unity(m, c) * elements[i].trace();
    rec.ap.emplace_back(p, ap.embedded(rec.ambient));
  }
  rec.validate();

  // faithfulness: the record must reproduce the representation's trace field
  auto traced = hecke_field_from_traces(rec);
  if (!traced.field.equals(rep.trace_field()))
    throw std::logic_error(spec.label + ": sampled traces do not generate the full field");
  if (!traced.stable)
    throw std::logic_error(spec.label + ": trace field not stable over the prime prefix");

  if (spec.attach_field_poly) rec.field_poly = rep.trace_field().min_poly();
  return rec;
}

NewformRecord make_dihedral_record(long char_modulus, long char_index,
                                   const std::string& label, long num_primes) {
  ConreyChar psi(char_modulus, char_index);
  if (psi.order() < 6) throw std::invalid_argument("dihedral data needs a character of order >= 6");
  if (psi.parity() != -1) throw std::invalid_argument("dihedral data needs an odd character");

  NewformRecord rec;
  rec.label = label;
  rec.level = psi.modulus();
  rec.character = psi;  // nebentypus psi * 1 = psi
  rec.ambient = psi.order();

  for (long p = 2; static_cast<long>(rec.ap.size()) < num_primes; ++p) {
    if (!is_prime(p) || rec.level % p == 0) continue;
    CycElt ap = psi.value(p) + CycElt::integer(1);
    rec.ap.emplace_back(p, ap.embedded(rec.ambient));
  }
  rec.validate();
  return rec;
}

}  // namespace heckefield::synth
