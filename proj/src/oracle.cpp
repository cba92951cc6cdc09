#include "trickmc/oracle.hpp"

namespace trickmc {

std::string_view to_string(OracleFormula formula) noexcept
{
    switch (formula) {
    case OracleFormula::af_p_and_empty: return "AF_p_and_empty";
    case OracleFormula::af_p: return "AFp";
    case OracleFormula::ag_p: return "AGp";
    case OracleFormula::ef_p: return "EFp";
    case OracleFormula::eg_p: return "EGp";
    }
    return "?";
}

std::string_view formula_text(OracleFormula formula) noexcept
{
    switch (formula) {
    case OracleFormula::af_p_and_empty: return "AF (p & empty)";
    case OracleFormula::af_p: return "AF p";
    case OracleFormula::ag_p: return "AG p";
    case OracleFormula::ef_p: return "EF p";
    case OracleFormula::eg_p: return "EG p";
    }
    return "?";
}

namespace {

struct PlayedPath {
    PathRecord record;
    // Matching test at each observation point, in order.
    std::vector<bool> matched;
};

// Last card equals the hidden card at intermediate observation points; the
// last observation point instead requires it to be the only card left.
std::vector<bool> observe(const PathRecord& record)
{
    std::vector<bool> matched;
    const auto& points = record.checkpoints;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Deck& deck = points[i].deck;
        if (i + 1 == points.size()) {
            matched.push_back(deck.size() == 1 && deck.front() == record.hidden);
        } else {
            matched.push_back(!deck.empty() && deck.back() == record.hidden);
        }
    }
    return matched;
}

std::vector<PlayedPath> play_all(const TrickProgram& program, SlotMode mode, bool needs_checkpoints)
{
    const auto bindings = enumerate_bindings(program, mode);
    if (bindings.empty()) {
        throw OracleError(OracleError::Code::no_paths, "no complete binding exists (m = 0)");
    }
    std::vector<PlayedPath> paths;
    paths.reserve(bindings.size());
    for (const auto& binding : bindings) {
        PlayedPath path{run_path(program, binding, mode), {}};
        path.matched = observe(path.record);
        if (needs_checkpoints && path.matched.empty()) {
            throw OracleError(OracleError::Code::incompatible_program,
                              "path " + binding.to_string() + " has no checkpoint to observe");
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

OracleReport start_report(OracleFormula formula, const std::vector<PlayedPath>& paths)
{
    OracleReport report;
    report.formula = formula;
    report.m = paths.size();
    for (const auto& path : paths) {
        report.checkpoints_per_path.push_back(path.matched.size());
        report.total_ops += path.record.op_count();
    }
    return report;
}

}  // namespace

OracleReport run_algorithm_2(const TrickProgram& program, SlotMode mode)
{
    const auto paths = play_all(program, mode, false);
    OracleReport report = start_report(OracleFormula::af_p_and_empty, paths);
    std::size_t flag = 0;
    for (const auto& path : paths) {
        const bool yes = path.record.final_answer;
        report.per_path.push_back(yes ? 1 : 0);
        if (yes) flag = flag + 1;
    }
    report.flag_total = flag;
    report.verdict = flag == report.m;
    return report;
}

OracleReport run_algorithm_3(const TrickProgram& program, SlotMode mode)
{
    // A single shared flag cannot express "on every path", so the flag is kept
    // per path and the flagged paths are counted.
    const auto paths = play_all(program, mode, true);
    OracleReport report = start_report(OracleFormula::af_p, paths);
    for (const auto& path : paths) {
        int flag = 0;
        for (bool matched : path.matched) {
            if (matched) flag = 1;
        }
        report.per_path.push_back(static_cast<std::size_t>(flag));
        report.flag_total += static_cast<std::size_t>(flag);
    }
    report.verdict = report.flag_total == report.m;
    return report;
}

OracleReport run_algorithm_4(const TrickProgram& program, SlotMode mode)
{
    const auto paths = play_all(program, mode, true);
    OracleReport report = start_report(OracleFormula::ag_p, paths);
    std::size_t flag = 0;
    std::size_t observations = 0;
    for (const auto& path : paths) {
        std::size_t on_path = 0;
        for (bool matched : path.matched) {
            if (matched) {
                flag = flag + 1;
                ++on_path;
            }
        }
        report.per_path.push_back(on_path);
        observations += path.matched.size();
    }
    report.flag_total = flag;
    // Six observations per path on the built-in trick.
    report.verdict = flag == observations;
    return report;
}

OracleReport run_algorithm_5(const TrickProgram& program, SlotMode mode)
{
    // No increment after the loop: it would make the verdict always true.
    const auto paths = play_all(program, mode, true);
    OracleReport report = start_report(OracleFormula::ef_p, paths);
    int flag = 0;
    for (const auto& path : paths) {
        std::size_t on_path = 0;
        for (bool matched : path.matched) {
            if (matched) {
                flag = 1;
                on_path = 1;
            }
        }
        report.per_path.push_back(on_path);
        report.flag_total += on_path;
    }
    report.flag = flag;
    report.verdict = flag > 0;
    return report;
}

OracleReport run_algorithm_6(const TrickProgram& program, SlotMode mode)
{
    const auto paths = play_all(program, mode, true);
    OracleReport report = start_report(OracleFormula::eg_p, paths);
    int flag2 = 0;
    for (const auto& path : paths) {
        std::size_t flag1 = 0;
        for (bool matched : path.matched) {
            if (matched) flag1 = flag1 + 1;
        }
        // Every observation on this path matched.
        if (flag1 == path.matched.size()) flag2 = 1;
        report.per_path.push_back(flag1);
        report.flag_total += flag1;
    }
    report.flag2 = flag2;
    report.verdict = flag2 == 1;
    return report;
}

OracleReport run_oracle(OracleFormula formula, const TrickProgram& program, SlotMode mode)
{
    switch (formula) {
    case OracleFormula::af_p_and_empty: return run_algorithm_2(program, mode);
    case OracleFormula::af_p: return run_algorithm_3(program, mode);
    case OracleFormula::ag_p: return run_algorithm_4(program, mode);
    case OracleFormula::ef_p: return run_algorithm_5(program, mode);
    case OracleFormula::eg_p: return run_algorithm_6(program, mode);
    }
    throw OracleError(OracleError::Code::incompatible_program, "unknown formula");
}

Json to_json(const OracleReport& report)
{
    Json out{{"formula", std::string(to_string(report.formula))},
             {"m", report.m},
             {"flag_total", report.flag_total}};
    if (report.flag) out["flag"] = *report.flag;
    if (report.flag2) out["flag2"] = *report.flag2;
    out["verdict"] = report.verdict;
    out["total_ops"] = report.total_ops;
    out["per_path"] = report.per_path;
    return out;
}

}  // namespace trickmc
