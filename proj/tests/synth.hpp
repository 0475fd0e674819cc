#pragma once

#include <string>

#include "heckefield/newform.hpp"

// Synthetic exact-trace records: Frobenius data drawn from a twisted matrix
// group, with a real Conrey nebentypus whose values steer which conjugacy
// fiber each prime lands in.  The same construction produces the bundled
// fixtures and the in-memory records the tests use.

namespace heckefield::synth {

struct SynthSpec {
  GroupKind kind;
  long twist_order;
  long char_modulus;
  long char_index;
  std::string label;
  long num_primes = 40;
  bool attach_field_poly = false;
};

// Builds the record and checks it is faithful: the nebentypus order matches
// the representation, the trace field equals the enumerated one, and the
// record classifies to the expected type.  Throws on any mismatch.
NewformRecord make_record(const SynthSpec& spec);

// Dihedral-style trace data: a_p = psi(p) + 1 for a character psi of order
// n >= 6, so c_p = 2 + psi(p) + psi(p)^-1 takes values outside every exotic
// fingerprint set once psi(p) has order > 5.
NewformRecord make_dihedral_record(long char_modulus, long char_index,
                                   const std::string& label, long num_primes);

}  // namespace heckefield::synth
