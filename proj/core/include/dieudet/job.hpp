#pragma once

#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "dieudet/det_class.hpp"
#include "dieudet/integrality.hpp"
#include "dieudet/lambda_quotient.hpp"
#include "dieudet/max_order.hpp"

namespace dieudet {

// One job = one JSON document: a context block plus a payload. Numbers in
// payloads are always strings; the tool never touches floating point.
struct JobContext {
    std::uint64_t p = 0;
    std::uint32_t padic_precision = 16;
    int series_precision = 24;
    std::string ring;  // group_ring | quaternion_rational | dihedral_component | skew_series | isogeny
    std::string group; // group spec when the ring needs one
};

struct IsogenyJob {
    Matrix<IwasawaSeries> a_e;
    Matrix<GroupRingElem<IwasawaSeries>> a_phi;
    Matrix<GroupRingElem<IwasawaSeries>> a_phitilde;
    PAdicScalar chi_phi;
    PAdicScalar chi_phitilde;
};

using JobPayload = std::variant<Matrix<GroupRingElem<PAdicScalar>>, // group_ring, odd p
                                Matrix<GroupRingElem<Rational>>,    // group_ring over H8
                                Matrix<Quat<Rational>>,             // quaternion_rational
                                Matrix<DihedralZp>,                 // dihedral_component
                                Matrix<TruncSeries<Quat<PAdicScalar>>>, // skew_series
                                IsogenyJob>;

struct Job {
    JobContext ctx;
    JobPayload payload;
    std::optional<std::uint64_t> seed;
};

Job parse_job(const std::string& text);
std::string serialize_job(const Job& job);

// Subcommand drivers; each returns the "results" object of the report.
nlohmann::json run_det_job(const Job& job);
nlohmann::json run_weierstrass_job(const Job& job);
nlohmann::json run_isogeny_job(const Job& job);

// Report envelope shared by every subcommand.
nlohmann::json make_report(const std::string& command, const nlohmann::json& context,
                           const nlohmann::json& results, double timing_ms);

nlohmann::json context_json(const JobContext& ctx);

} // namespace dieudet
