#pragma once

#include <stdexcept>
#include <string>

namespace gab {

// Every failure mode gets a stable identifier so the CLI can emit
// machine-readable `error=<id>` records.
enum class Errc {
    bad_argument,
    parse_error,
    tower_mismatch,
    not_irreducible,
    no_primitive_found,
    bad_parameter_s,
    zero_functional,
    not_a_basis,
    not_in_kernel,
    bad_gamma,
    not_primitive,
    too_large,
    cap_exceeded,
    dependent_points,
    rank_deficient,
    no_standard_form,
    not_q_cauchy,
    singular_system,
    verification_failed,
    not_circulant,
    validation_failed,
    unknown_suite,
};

const char* errc_id(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const { return code_; }
    const char* id() const { return errc_id(code_); }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace gab
