#pragma once

// Reference model checking by flag counting over every enumerated path. This
// is kept deliberately naive and shares nothing with the tree checker in
// ctl.hpp: it walks the recorded checkpoints of each path and counts.

#include "trickmc/trick.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace trickmc {

enum class OracleFormula { af_p_and_empty, af_p, ag_p, ef_p, eg_p };

inline constexpr std::array<OracleFormula, 5> kOracleFormulas = {
    OracleFormula::af_p_and_empty, OracleFormula::af_p, OracleFormula::ag_p, OracleFormula::ef_p,
    OracleFormula::eg_p};

// AF_p_and_empty, AFp, AGp, EFp, EGp
std::string_view to_string(OracleFormula formula) noexcept;
// Surface syntax of the same property: "AF (p & empty)", "AF p", ...
std::string_view formula_text(OracleFormula formula) noexcept;

struct OracleReport {
    OracleFormula formula = OracleFormula::af_p_and_empty;
    std::size_t m = 0;
    // Sum of per-path flags.
    std::size_t flag_total = 0;
    // Global 0/1 flag (EFp).
    std::optional<int> flag;
    // Global 0/1 flag (EGp).
    std::optional<int> flag2;
    std::vector<std::size_t> per_path;
    // Observation points per path; 6 on every path of the built-in trick.
    std::vector<std::size_t> checkpoints_per_path;
    std::size_t total_ops = 0;
    bool verdict = false;
};

class OracleError : public std::runtime_error {
public:
    enum class Code { no_paths, incompatible_program };

    OracleError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

// AF(p & empty): count paths answering "yes"; true iff the count is m.
OracleReport run_algorithm_2(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);
// AFp: each path flagged when some checkpoint matches; true iff all are.
OracleReport run_algorithm_3(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);
// AGp: count matching checkpoints; true iff every checkpoint of every path matches.
OracleReport run_algorithm_4(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);
// EFp: one global flag set by any matching checkpoint.
OracleReport run_algorithm_5(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);
// EGp: flag2 set by a path whose checkpoints all match.
OracleReport run_algorithm_6(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);

OracleReport run_oracle(OracleFormula formula, const TrickProgram& program,
                        SlotMode mode = SlotMode::internal_gaps);

Json to_json(const OracleReport& report);

}  // namespace trickmc
