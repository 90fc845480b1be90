#pragma once

#include <stdexcept>
#include <string>

namespace btab {

enum class Errc {
  fill_length_mismatch,
  all_zero_fill,
  malformed_shape,
  invalid_grid,
  parse_error,
  resource_cap,
  domain_error,
  index_out_of_range,
  not_ergodic,
  solver_failure,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace btab
