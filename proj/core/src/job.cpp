#include "dieudet/job.hpp"

#include <nlohmann/json.hpp>

namespace dieudet {

using nlohmann::json;

namespace {

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) fail(ErrorKind::ParseError, "unknown field \"" + it.key() + "\" in " + where);
    }
}

std::string need_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(ErrorKind::ParseError, where + " must be a string");
    return j.get<std::string>();
}

long need_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return j.get<long>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stol(s);
    }
    fail(ErrorKind::ParseError, where + " must be an integer");
}

JobContext parse_context(const json& j) {
    if (!j.is_object()) fail(ErrorKind::ParseError, "context must be an object");
    reject_unknown_fields(j, {"p", "padic_precision", "series_precision", "ring", "group"}, "context");
    JobContext ctx;
    if (j.contains("p")) ctx.p = static_cast<std::uint64_t>(need_int(j.at("p"), "context.p"));
    if (j.contains("padic_precision"))
        ctx.padic_precision = static_cast<std::uint32_t>(need_int(j.at("padic_precision"), "context.padic_precision"));
    if (j.contains("series_precision"))
        ctx.series_precision = static_cast<int>(need_int(j.at("series_precision"), "context.series_precision"));
    if (j.contains("ring")) ctx.ring = need_string(j.at("ring"), "context.ring");
    if (j.contains("group")) ctx.group = need_string(j.at("group"), "context.group");
    if (ctx.ring.empty()) fail(ErrorKind::ParseError, "context.ring is required");
    return ctx;
}

// ---- element parsers ---------------------------------------------------------

template <class S, class CoeffParser>
GroupRingElem<S> parse_group_elem(const json& j, const GroupPtr& g, const S& proto, CoeffParser parse_coeff,
                                  const std::string& where) {
    if (!j.is_array()) fail(ErrorKind::ParseError, where + " must be a list of [word, coefficient] pairs");
    auto out = GroupRingElem<S>::zero(g, proto);
    for (const json& term : j) {
        if (!term.is_array() || term.size() != 2)
            fail(ErrorKind::ParseError, where + " terms must be [word, coefficient] pairs");
        std::string word = need_string(term.at(0), where + " word");
        std::uint16_t code = g->parse_word(word);
        out.coeff(code) += parse_coeff(term.at(1));
    }
    return out;
}

template <class T, class EntryParser>
Matrix<T> parse_matrix(const json& j, EntryParser parse_entry, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, where + " must be a non-empty array of rows");
    const std::size_t n = j.size();
    std::vector<T> entries;
    entries.reserve(n * n);
    for (const json& row : j) {
        if (!row.is_array() || row.size() != n)
            fail(ErrorKind::ParseError, where + " must be square (every row of length " + std::to_string(n) + ")");
        for (const json& e : row) entries.push_back(parse_entry(e));
    }
    return Matrix<T>(n, std::move(entries));
}

CycloZp parse_cyclo(const json& j, std::uint32_t p, std::uint32_t prec, const std::string& where) {
    if (!j.is_array() || j.size() != p - 1)
        fail(ErrorKind::ParseError, where + " must be a coefficient list of length p-1");
    std::vector<PAdicScalar> c;
    c.reserve(p - 1);
    for (const json& e : j) c.push_back(PAdicScalar::parse(p, prec, need_string(e, where + " coefficient")));
    return CycloZp(p, std::move(c));
}

// Quaternion 4-tuple in the 1, i, j, ij basis with optional /2 denominators.
Quat<Rational> parse_quat_rational(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4) fail(ErrorKind::ParseError, where + " must be a 4-tuple");
    std::array<Rational, 4> b;
    for (int k = 0; k < 4; ++k) b[static_cast<std::size_t>(k)] = Rational::parse(need_string(j.at(k), where));
    return quat_from_b(b);
}

Quat<PAdicScalar> parse_quat_2adic(const json& j, std::uint32_t prec, const std::string& where) {
    if (!j.is_array() || j.size() != 4) fail(ErrorKind::ParseError, where + " must be a 4-tuple");
    std::array<PAdicScalar, 4> doubled = {PAdicScalar::zero(2, prec), PAdicScalar::zero(2, prec),
                                          PAdicScalar::zero(2, prec), PAdicScalar::zero(2, prec)};
    for (int k = 0; k < 4; ++k) {
        std::string text = need_string(j.at(k), where);
        Rational r = Rational::parse(text);
        Rational two_r = r * Rational(2);
        if (!two_r.is_integral()) fail(ErrorKind::ParseError, where + ": coordinate " + text + " is not a half-integer");
        doubled[static_cast<std::size_t>(k)] = PAdicScalar::parse(2, prec, two_r.str());
    }
    return quat_from_b_doubled(doubled);
}

IwasawaSeries parse_series(const json& j, std::uint64_t p, std::uint32_t prec, int m, const std::string& where) {
    if (!j.is_array()) fail(ErrorKind::ParseError, where + " must be a coefficient list");
    if (static_cast<int>(j.size()) > m) fail(ErrorKind::ParseError, where + " has more than series_precision coefficients");
    std::vector<PAdicScalar> c(static_cast<std::size_t>(m), PAdicScalar::zero(p, prec));
    for (std::size_t i = 0; i < j.size(); ++i)
        c[i] = PAdicScalar::parse(p, prec, need_string(j.at(i), where + " coefficient"));
    return IwasawaSeries(std::move(c));
}

TruncSeries<Quat<PAdicScalar>> parse_skew_series(const json& j, std::uint32_t prec, int m, const std::string& where) {
    if (!j.is_array()) fail(ErrorKind::ParseError, where + " must be a list of quaternion 4-tuples");
    if (static_cast<int>(j.size()) > m) fail(ErrorKind::ParseError, where + " has more than series_precision coefficients");
    std::vector<Quat<PAdicScalar>> c(static_cast<std::size_t>(m), Quat<PAdicScalar>::constant(PAdicScalar::zero(2, prec)));
    for (std::size_t i = 0; i < j.size(); ++i) c[i] = parse_quat_2adic(j.at(i), prec, where);
    return TruncSeries<Quat<PAdicScalar>>(std::move(c));
}

// ---- serializers --------------------------------------------------------------

json cyclo_json(const CycloZp& c) {
    json out = json::array();
    for (const PAdicScalar& x : c.coords()) out.push_back(x.str());
    return out;
}

json quat_rational_json(const Quat<Rational>& q) {
    auto b = quat_to_b(q);
    return json::array({b[0].str(), b[1].str(), b[2].str(), b[3].str()});
}

json quat_2adic_json(const Quat<PAdicScalar>& q) {
    auto d = q.b_doubled();
    json out = json::array();
    for (const PAdicScalar& x : d) {
        if (x.residue() % 2 == 0)
            out.push_back(std::to_string(x.residue() / 2));
        else
            out.push_back(x.str() + "/2");
    }
    return out;
}

json series_json(const IwasawaSeries& s) {
    json out = json::array();
    for (const PAdicScalar& x : s.coeffs()) out.push_back(x.str());
    return out;
}

template <class S, class CoeffJson>
json group_elem_json(const GroupRingElem<S>& e, CoeffJson coeff_json) {
    json out = json::array();
    for (std::uint16_t g = 0; g < e.group()->size(); ++g) {
        if (is_zero(e.coeff(g))) continue;
        out.push_back(json::array({e.group()->word(g), coeff_json(e.coeff(g))}));
    }
    if (out.empty()) out.push_back(json::array({"1", coeff_json(e.coeff(0))}));
    return out;
}

template <class T, class EntryJson>
json matrix_json(const Matrix<T>& m, EntryJson entry_json) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(entry_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::uint32_t group_prime(const JobContext& ctx, const GroupPtr& g) {
    switch (g->kind()) {
        case FiniteGroup::Kind::H8: {
            if (ctx.p != 0 && ctx.p != 2) fail(ErrorKind::ParseError, "H8 forces p = 2");
            return 2;
        }
        case FiniteGroup::Kind::Dihedral:
        case FiniteGroup::Kind::Cyclic: {
            if (ctx.p != 0 && ctx.p != g->p_param())
                fail(ErrorKind::ParseError, "group " + g->spec() + " forces p = " + std::to_string(g->p_param()));
            return g->p_param();
        }
        default:
            return ctx.p == 0 ? 2 : static_cast<std::uint32_t>(ctx.p);
    }
}

} // namespace

Job parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorKind::ParseError, "job document must be an object");
    reject_unknown_fields(doc, {"context", "matrix", "series", "isogeny", "seed"}, "job");
    if (!doc.contains("context")) fail(ErrorKind::ParseError, "job needs a context block");
    JobContext ctx = parse_context(doc.at("context"));

    std::optional<std::uint64_t> seed;
    if (doc.contains("seed")) seed = static_cast<std::uint64_t>(need_int(doc.at("seed"), "seed"));

    const std::uint32_t prec = ctx.padic_precision;
    if (ctx.ring == "group_ring") {
        if (ctx.group.empty()) fail(ErrorKind::ParseError, "group_ring jobs need context.group");
        GroupPtr g = FiniteGroup::parse_spec(ctx.group);
        std::uint32_t p = group_prime(ctx, g);
        ctx.p = p;
        if (!doc.contains("matrix")) fail(ErrorKind::ParseError, "group_ring jobs need a matrix payload");
        if (g->kind() == FiniteGroup::Kind::H8) {
            auto entry = [&](const json& e) {
                return parse_group_elem<Rational>(
                    e, g, Rational(), [](const json& c) { return Rational::parse(need_string(c, "coefficient")); },
                    "matrix entry");
            };
            return Job{ctx, parse_matrix<GroupRingElem<Rational>>(doc.at("matrix"), entry, "matrix"), seed};
        }
        PAdicScalar proto = PAdicScalar::zero(p, prec);
        auto entry = [&](const json& e) {
            return parse_group_elem<PAdicScalar>(
                e, g, proto, [&](const json& c) { return PAdicScalar::parse(p, prec, need_string(c, "coefficient")); },
                "matrix entry");
        };
        return Job{ctx, parse_matrix<GroupRingElem<PAdicScalar>>(doc.at("matrix"), entry, "matrix"), seed};
    }
    if (ctx.ring == "quaternion_rational") {
        if (!doc.contains("matrix")) fail(ErrorKind::ParseError, "quaternion jobs need a matrix payload");
        auto entry = [&](const json& e) { return parse_quat_rational(e, "matrix entry"); };
        return Job{ctx, parse_matrix<Quat<Rational>>(doc.at("matrix"), entry, "matrix"), seed};
    }
    if (ctx.ring == "dihedral_component") {
        if (ctx.p < 3) fail(ErrorKind::ParseError, "dihedral_component jobs need an odd context.p");
        if (!doc.contains("matrix")) fail(ErrorKind::ParseError, "dihedral_component jobs need a matrix payload");
        std::uint32_t p = static_cast<std::uint32_t>(ctx.p);
        auto entry = [&](const json& e) {
            if (!e.is_object()) fail(ErrorKind::ParseError, "dihedral entries are {\"c\": [...], \"d\": [...]}");
            reject_unknown_fields(e, {"c", "d"}, "dihedral entry");
            return DihedralZp(parse_cyclo(e.at("c"), p, prec, "entry c"), parse_cyclo(e.at("d"), p, prec, "entry d"));
        };
        return Job{ctx, parse_matrix<DihedralZp>(doc.at("matrix"), entry, "matrix"), seed};
    }
    if (ctx.ring == "skew_series") {
        if (ctx.p != 0 && ctx.p != 2) fail(ErrorKind::ParseError, "skew series live over the 2-adic order");
        ctx.p = 2;
        if (!doc.contains("series")) fail(ErrorKind::ParseError, "skew_series jobs need a series payload");
        Matrix<TruncSeries<Quat<PAdicScalar>>> m(
            1, {parse_skew_series(doc.at("series"), prec, ctx.series_precision, "series")});
        return Job{ctx, std::move(m), seed};
    }
    if (ctx.ring == "isogeny") {
        if (!doc.contains("isogeny")) fail(ErrorKind::ParseError, "isogeny jobs need an isogeny payload");
        const json& iso = doc.at("isogeny");
        reject_unknown_fields(iso, {"A_E", "A_phi", "A_phitilde", "chi_phi", "chi_phitilde"}, "isogeny");
        if (ctx.group.empty()) fail(ErrorKind::ParseError, "isogeny jobs need context.group (a Cp:<p> spec)");
        GroupPtr g = FiniteGroup::parse_spec(ctx.group);
        std::uint32_t p = group_prime(ctx, g);
        ctx.p = p;
        const int m = ctx.series_precision;
        auto series_entry = [&](const json& e) { return parse_series(e, p, prec, m, "A_E entry"); };
        auto lambda_entry = [&](const json& e) {
            return parse_group_elem<IwasawaSeries>(
                e, g, IwasawaSeries::constant(PAdicScalar::zero(p, prec), m),
                [&](const json& c) { return parse_series(c, p, prec, m, "coefficient series"); }, "matrix entry");
        };
        IsogenyJob job{parse_matrix<IwasawaSeries>(iso.at("A_E"), series_entry, "A_E"),
                       parse_matrix<GroupRingElem<IwasawaSeries>>(iso.at("A_phi"), lambda_entry, "A_phi"),
                       parse_matrix<GroupRingElem<IwasawaSeries>>(iso.at("A_phitilde"), lambda_entry, "A_phitilde"),
                       PAdicScalar::parse(p, 2, need_string(iso.at("chi_phi"), "chi_phi")),
                       PAdicScalar::parse(p, 2, need_string(iso.at("chi_phitilde"), "chi_phitilde"))};
        return Job{ctx, std::move(job), seed};
    }
    fail(ErrorKind::ParseError, "unknown ring kind \"" + ctx.ring + "\"");
}

json context_json(const JobContext& ctx) {
    json j{{"p", ctx.p}, {"padic_precision", ctx.padic_precision}, {"series_precision", ctx.series_precision},
           {"ring", ctx.ring}};
    if (!ctx.group.empty()) j["group"] = ctx.group;
    return j;
}

std::string serialize_job(const Job& job) {
    json doc;
    doc["context"] = context_json(job.ctx);
    if (job.seed) doc["seed"] = *job.seed;
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, Matrix<GroupRingElem<PAdicScalar>>>) {
                doc["matrix"] = matrix_json(payload, [](const GroupRingElem<PAdicScalar>& e) {
                    return group_elem_json(e, [](const PAdicScalar& c) { return json(c.str()); });
                });
            } else if constexpr (std::is_same_v<T, Matrix<GroupRingElem<Rational>>>) {
                doc["matrix"] = matrix_json(payload, [](const GroupRingElem<Rational>& e) {
                    return group_elem_json(e, [](const Rational& c) { return json(c.str()); });
                });
            } else if constexpr (std::is_same_v<T, Matrix<Quat<Rational>>>) {
                doc["matrix"] = matrix_json(payload, [](const Quat<Rational>& q) { return quat_rational_json(q); });
            } else if constexpr (std::is_same_v<T, Matrix<DihedralZp>>) {
                doc["matrix"] = matrix_json(payload, [](const DihedralZp& e) {
                    return json{{"c", cyclo_json(e.c())}, {"d", cyclo_json(e.d())}};
                });
            } else if constexpr (std::is_same_v<T, Matrix<TruncSeries<Quat<PAdicScalar>>>>) {
                json s = json::array();
                const auto& ser = payload.at(0, 0);
                for (int i = 0; i < ser.length(); ++i) s.push_back(quat_2adic_json(ser.coeff(i)));
                doc["series"] = s;
            } else if constexpr (std::is_same_v<T, IsogenyJob>) {
                json iso;
                iso["A_E"] = matrix_json(payload.a_e, [](const IwasawaSeries& s) { return series_json(s); });
                auto lam = [](const GroupRingElem<IwasawaSeries>& e) {
                    return group_elem_json(e, [](const IwasawaSeries& c) { return series_json(c); });
                };
                iso["A_phi"] = matrix_json(payload.a_phi, lam);
                iso["A_phitilde"] = matrix_json(payload.a_phitilde, lam);
                iso["chi_phi"] = payload.chi_phi.str();
                iso["chi_phitilde"] = payload.chi_phitilde.str();
                doc["isogeny"] = iso;
            }
        },
        job.payload);
    return doc.dump(2);
}

// ---- subcommand drivers ----------------------------------------------------------

namespace {

template <class Elem, class W>
json certificate_json(const Certificate<Elem>& cert, W elem_json) {
    json j{{"verdict", verdict_name(cert.verdict)}, {"trace_length", cert.trace_length}};
    if (!cert.reason.empty()) j["reason"] = cert.reason;
    if (cert.representative) j["representative"] = elem_json(*cert.representative);
    return j;
}

} // namespace

json run_det_job(const Job& job) {
    json out;
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, Matrix<GroupRingElem<PAdicScalar>>>) {
                const GroupPtr& g = payload.at(0, 0).group();
                if (g->kind() == FiniteGroup::Kind::Dihedral) {
                    DihedralDetClass<PAdicScalar> cls = det_class(payload);
                    out["det1"] = json::array({cls.comm.coeff(0).str(), cls.comm.coeff(1).str()});
                    out["nrd"] = cyclo_json(cls.nrd);
                    DihedralCertificate cert = dihedral_integral_representative(payload);
                    out["certificate"] = certificate_json(cert, [](const GroupRingElem<PAdicScalar>& e) {
                        return group_elem_json(e, [](const PAdicScalar& c) { return json(c.str()); });
                    });
                } else if (g->kind() == FiniteGroup::Kind::Custom) {
                    fail(ErrorKind::UnsupportedGroup, "determinant classes need a named group");
                } else {
                    // commutative group rings: the determinant is the class
                    GroupRingElem<PAdicScalar> det = det_commutative(payload);
                    if (det.is_zero()) fail(ErrorKind::SingularAtPrecision, "determinant vanishes at precision");
                    out["det"] = group_elem_json(det, [](const PAdicScalar& c) { return json(c.str()); });
                    out["certificate"] = json{{"verdict", "RepresentativeFound"}, {"trace_length", 0}};
                }
            } else if constexpr (std::is_same_v<T, Matrix<GroupRingElem<Rational>>>) {
                H8DetClass cls = det_class(payload);
                out["det1"] = json::array({cls.comm.coeff(0).str(), cls.comm.coeff(1).str(), cls.comm.coeff(2).str(),
                                           cls.comm.coeff(3).str()});
                out["nrd"] = cls.nrd.str();
                H8Obstruction res = h8_obstruction(payload);
                out["certificate"] = certificate_json(res.certificate, [](const GroupRingElem<Rational>& e) {
                    return group_elem_json(e, [](const Rational& c) { return json(c.str()); });
                });
                if (res.actual_nrd_mod8 >= 0) {
                    out["certificate"]["attainable_nrd_mod8"] = res.attainable_nrd_mod8;
                    out["certificate"]["actual_nrd_mod8"] = res.actual_nrd_mod8;
                }
            } else if constexpr (std::is_same_v<T, Matrix<Quat<Rational>>>) {
                QuatDetClass cls = det_class(payload);
                out["nrd"] = cls.nrd.str();
                out["representative"] = quat_rational_json(cls.rep);
                // the splitting-field determinant as an exact fraction pair
                Gaussian<Rational> split = det_commutative(quaternion_splitting_matrix(payload));
                out["splitting_det"] = json::array({split.re().str(), split.im().str()});
            } else if constexpr (std::is_same_v<T, Matrix<DihedralZp>>) {
                CycloZp nrd = nrd_matrix_dihedral(payload);
                if (nrd.is_zero()) fail(ErrorKind::SingularAtPrecision, "reduced norm vanishes at precision");
                out["nrd"] = cyclo_json(nrd);
            } else {
                fail(ErrorKind::ParseError, "det expects a matrix payload");
            }
        },
        job.payload);
    return out;
}

json run_weierstrass_job(const Job& job) {
    const auto* m = std::get_if<Matrix<TruncSeries<Quat<PAdicScalar>>>>(&job.payload);
    if (!m) fail(ErrorKind::ParseError, "weierstrass expects a skew_series payload");
    const auto& f = m->at(0, 0);
    WeierstrassFactorization<Quat<PAdicScalar>> w = weierstrass_prepare(f);
    json out;
    out["mu"] = w.mu;
    json uj = json::array(), jj = json::array();
    for (int i = 0; i < w.unit.length(); ++i) uj.push_back(quat_2adic_json(w.unit.coeff(i)));
    for (int i = 0; i < w.monic.length(); ++i) jj.push_back(quat_2adic_json(w.monic.coeff(i)));
    out["unit"] = uj;
    out["monic"] = jj;
    TruncSeries<Quat<PAdicScalar>> rebuilt = pi_pow_mul_left(w.unit * w.monic, static_cast<std::uint32_t>(w.mu));
    bool zero_residual = rebuilt.equal_where_trusted(f);
    out["reconstruction_residual_zero"] = zero_residual;
    out["trusted_coefficients"] = std::min(rebuilt.trusted(), f.trusted());
    if (!zero_residual) fail(ErrorKind::PrecisionTooLow, "reconstruction residual is nonzero");
    return out;
}

json run_isogeny_job(const Job& job) {
    const auto* iso = std::get_if<IsogenyJob>(&job.payload);
    if (!iso) fail(ErrorKind::ParseError, "isogeny-check expects an isogeny payload");
    GroupPtr g = iso->a_phi.at(0, 0).group();
    IsogenyCharacter chi(g, iso->chi_phi);
    IsogenyCharacter chit(iso->a_phitilde.at(0, 0).group(), iso->chi_phitilde);
    IsogenyReport rep = verify_isogeny_identity(iso->a_e, iso->a_phi, chi, iso->a_phitilde, chit);
    json out;
    out["holds"] = rep.holds;
    out["lhs_generator"] = series_json(rep.lhs);
    out["rhs_generator"] = series_json(rep.rhs);
    out["gen_phi"] = series_json(rep.gen_phi);
    out["gen_phitilde"] = series_json(rep.gen_phitilde);
    out["lhs_divides_rhs"] = rep.lhs_divides_rhs;
    out["rhs_divides_lhs"] = rep.rhs_divides_lhs;
    out["truncation_order"] = rep.truncation_order;
    out["assumption"] = rep.assumption;
    return out;
}

json make_report(const std::string& command, const json& context, const json& results, double timing_ms) {
    return json{{"command", command}, {"context", context}, {"results", results}, {"timing_ms", timing_ms},
                {"version", "0.1.0"}};
}

} // namespace dieudet
