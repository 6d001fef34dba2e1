#pragma once

#include <span>
#include <string>

#include "tutorkit/model.hpp"

namespace tutorkit {

// Shannon entropy of a symbol window: H = -sum p_s log(p_s) with
// p_s = count(s) / |window|, in units of the given log base (bits for
// base 2). Non-negative; 0 * log 0 := 0.
double shannon_entropy(std::span<const int> symbols, double log_base = 2.0);
double shannon_entropy(std::span<const std::string> symbols,
                       double log_base = 2.0);

struct DistributednessResult {
  std::string learner_id;
  double value = 0.0;            // average entropy over all windows
  std::size_t n_subsequences = 0;  // L * (L + 1) / 2
};

// Degree of distributed tutorship: the mean Shannon entropy over all
// L*(L+1)/2 contiguous subsequences of the tutor sequence, singletons
// included. Captures diversity (many tutors) and discontinuity (frequent
// switching) together: <aaabbb> scores lower than <ababab> even though the
// whole-sequence entropies match. O(L^2) via incremental counts per start
// position.
DistributednessResult distributedness(const TutorshipSequence& seq,
                                      double log_base = 2.0);

// Reference implementation: literal enumeration of every contiguous
// subsequence with a fresh entropy computation each time, sharing no code
// with the fast path. O(L^3); for verification only.
double distributedness_bruteforce(const TutorshipSequence& seq,
                                  double log_base = 2.0);

}  // namespace tutorkit
