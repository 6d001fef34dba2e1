#include "tutorkit/distributedness.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace tutorkit {

namespace {

void check_log_base(double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0) {
    throw std::invalid_argument("entropy log base must be positive and != 1");
  }
}

template <typename T>
double entropy_of(std::span<const T> symbols, double log_base) {
  check_log_base(log_base);
  if (symbols.empty()) {
    throw std::invalid_argument("shannon_entropy: empty subsequence");
  }
  std::map<T, std::size_t> counts;
  for (const T& s : symbols) ++counts[s];
  if (counts.size() == 1) return 0.0;
  const double total = static_cast<double>(symbols.size());
  double h = 0.0;
  for (const auto& [sym, count] : counts) {
    const double p = static_cast<double>(count) / total;
    h -= p * std::log(p);
  }
  return h / std::log(log_base);
}

// Maps tutors to dense ids 0..A-1 in order of first appearance.
std::vector<int> compress_alphabet(const std::vector<std::string>& tutors,
                                   std::size_t& alphabet_size) {
  std::unordered_map<std::string, int> ids;
  std::vector<int> out;
  out.reserve(tutors.size());
  for (const std::string& t : tutors) {
    auto [it, inserted] = ids.try_emplace(t, static_cast<int>(ids.size()));
    (void)inserted;
    out.push_back(it->second);
  }
  alphabet_size = ids.size();
  return out;
}

}  // namespace

double shannon_entropy(std::span<const int> symbols, double log_base) {
  return entropy_of(symbols, log_base);
}

double shannon_entropy(std::span<const std::string> symbols,
                       double log_base) {
  return entropy_of(symbols, log_base);
}

DistributednessResult distributedness(const TutorshipSequence& seq,
                                      double log_base) {
  check_log_base(log_base);
  const std::size_t n = seq.tutors.size();
  if (n == 0) {
    throw std::invalid_argument("distributedness: empty sequence");
  }
  std::size_t alphabet = 0;
  const std::vector<int> ids = compress_alphabet(seq.tutors, alphabet);

  // x*log(x) table for window lengths and counts up to n.
  std::vector<double> xlogx(n + 1, 0.0);
  std::vector<double> logx(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    logx[k] = std::log(static_cast<double>(k));
    xlogx[k] = static_cast<double>(k) * logx[k];
  }

  // For the window [i, j]: H = log(t) - (1/t) * sum_s c_s*log(c_s), kept
  // incrementally as the window grows. Windows with a single distinct
  // tutor are exactly zero.
  double total = 0.0;
  std::vector<std::size_t> counts(alphabet, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    double sum_clogc = 0.0;
    std::size_t distinct = 0;
    for (std::size_t j = i; j < n; ++j) {
      std::size_t& c = counts[static_cast<std::size_t>(ids[j])];
      if (c == 0) ++distinct;
      sum_clogc += xlogx[c + 1] - xlogx[c];
      ++c;
      if (distinct > 1) {
        const std::size_t t = j - i + 1;
        const double h = logx[t] - sum_clogc / static_cast<double>(t);
        total += h > 0.0 ? h : 0.0;
      }
    }
  }

  DistributednessResult result;
  result.learner_id = seq.learner_id;
  result.n_subsequences = n * (n + 1) / 2;
  result.value =
      total / static_cast<double>(result.n_subsequences) / std::log(log_base);
  return result;
}

double distributedness_bruteforce(const TutorshipSequence& seq,
                                  double log_base) {
  check_log_base(log_base);
  const std::size_t n = seq.tutors.size();
  if (n == 0) {
    throw std::invalid_argument("distributedness: empty sequence");
  }
  double total = 0.0;
  std::size_t n_subsequences = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::map<std::string, std::size_t> counts;
      for (std::size_t k = i; k <= j; ++k) ++counts[seq.tutors[k]];
      const double size = static_cast<double>(j - i + 1);
      double h = 0.0;
      for (const auto& [tutor, count] : counts) {
        const double p = static_cast<double>(count) / size;
        h -= p * (std::log(p) / std::log(log_base));
      }
      total += h;
      ++n_subsequences;
    }
  }
  return total / static_cast<double>(n_subsequences);
}

}  // namespace tutorkit
