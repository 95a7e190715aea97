#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistlab {

using cxd = std::complex<double>;

// Error taxonomy used across the library.  All derive from std::runtime_error
// so callers can catch coarsely; the CLI maps each to a distinct exit message.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 12-significant-digit scientific notation; fixed across platforms so golden
// files compare byte-identical.
std::string fmt_sci(double x);
std::string fmt_sci(cxd x);

// FNV-1a 64-bit, used for artifact hashes in run manifests.
std::uint64_t fnv1a(const std::string& data);

}  // namespace twistlab
