#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace tutorkit {

// FNV-1a, 64 bit. Stable across platforms and runs, which is all the
// cache keys and config hashes need (no adversarial inputs here).
class Fnv1a64 {
 public:
  Fnv1a64& update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  Fnv1a64& update(const void* data, std::size_t n) {
    return update(std::string_view(static_cast<const char*>(data), n));
  }

  template <typename T>
  Fnv1a64& update_value(const T& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    return update(&v, sizeof(v));
  }

  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
  return Fnv1a64().update(bytes).digest();
}

inline std::string to_hex(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

inline std::string Fnv1a64::hex() const { return to_hex(state_); }

}  // namespace tutorkit
