#pragma once

// Certificate files: self-contained JSON documents holding the config
// echo, the matrices of the evidence (sparse triplets of ring elements),
// and the claimed numbers, so a third party can re-check everything from
// the raw data.  Verification rebuilds the ambient objects from the
// recorded generator degrees and re-runs the checks against the stored
// matrices.  No timestamps: re-running a command with the same config
// and seed reproduces the payload byte for byte.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghl/catalog.hpp"
#include "ghl/invariants.hpp"

namespace ghl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertFormat = "ghostlevel-certificate/1";

struct CertConfig {
    std::string group;
    std::vector<int> degrees;
    int lie_dim = 0;
    FieldSpec field;
    int n = 1;
    int D = 60;
    uint64_t seed = 0;
    int trials = 0;
};

inline Json config_json(const CertConfig& c) {
    Json j;
    j["group"] = c.group;
    j["degrees"] = c.degrees;
    j["lie_dim"] = c.lie_dim;
    j["char"] = c.field.p;
    j["n"] = c.n;
    j["D"] = c.D;
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    return j;
}

inline CertConfig config_from_json(const Json& j) {
    CertConfig c;
    c.group = j.at("group").get<std::string>();
    c.degrees = j.at("degrees").get<std::vector<int>>();
    c.lie_dim = j.at("lie_dim").get<int>();
    c.field = FieldSpec{j.at("char").get<uint32_t>()};
    c.n = j.at("n").get<int>();
    c.D = j.at("D").get<int>();
    c.seed = j.at("seed").get<uint64_t>();
    c.trials = j.at("trials").get<int>();
    return c;
}

// ------------------------------------------------------- serialization

template <class F>
Json poly_json(const F& f, const RElem<F>& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms) {
        Json t = Json::array();
        t.push_back(f.to_string(c));
        t.push_back(m.e);
        terms.push_back(std::move(t));
    }
    return terms;
}

template <class F>
RElem<F> poly_from_json(const F& f, const FreeGCAlgebra& ring, const Json& j) {
    RElem<F> p;
    for (const auto& t : j) {
        Monomial m;
        auto exps = t.at(1).get<std::vector<uint16_t>>();
        if ((int)exps.size() != ring.num_generators())
            throw malformed_input("certificate: monomial width mismatch");
        m.e = std::move(exps);
        p.terms.push_back({std::move(m), f.parse(t.at(0).get<std::string>())});
    }
    p.normalize(f);
    return p;
}

template <class F>
Json rmat_json(const F& f, const RMat<F>& m) {
    Json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    Json entries = Json::array();
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            if (m.at(r, c).is_zero()) continue;
            Json e = Json::array();
            e.push_back(r);
            e.push_back(c);
            e.push_back(poly_json(f, m.at(r, c)));
            entries.push_back(std::move(e));
        }
    j["entries"] = std::move(entries);
    return j;
}

template <class F>
RMat<F> rmat_from_json(const F& f, const FreeGCAlgebra& ring, const Json& j) {
    RMat<F> m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.at("entries")) {
        int r = e.at(0).get<int>(), c = e.at(1).get<int>();
        if (r < 0 || r >= m.rows || c < 0 || c >= m.cols)
            throw malformed_input("certificate: matrix entry out of bounds");
        m.at(r, c) = poly_from_json(f, ring, e.at(2));
    }
    return m;
}

template <class F>
Json chainmap_json(const F& f, const ChainMap<F>& m) {
    Json j;
    j["hom_shift"] = m.hom_shift;
    j["int_shift"] = m.int_shift;
    Json comps = Json::array();
    for (const auto& c : m.comps) comps.push_back(rmat_json(f, c));
    j["comps"] = std::move(comps);
    return j;
}

template <class F>
ChainMap<F> chainmap_from_json(const F& f, ComplexPtr<F> src, ComplexPtr<F> tgt, const Json& j) {
    ChainMap<F> m;
    m.src = src;
    m.tgt = tgt;
    m.hom_shift = j.at("hom_shift").get<int>();
    m.int_shift = j.at("int_shift").get<int>();
    for (const auto& c : j.at("comps")) m.comps.push_back(rmat_from_json(f, *src->ring, c));
    if ((int)m.comps.size() != src->length() + 1)
        throw malformed_input("certificate: chain map has wrong number of components");
    return m;
}

inline Json series_json(const GradedDims& s) { return Json(s.c); }

inline Json shifted_json(const ShiftedDims& s) {
    Json j;
    j["offset"] = s.offset;
    j["c"] = s.c;
    return j;
}

inline Json obstruction_json(const Obstruction& o) {
    Json j;
    j["hom_degree"] = o.hom_degree;
    j["src_internal"] = o.src_internal;
    j["tgt_internal"] = o.tgt_internal;
    return j;
}

// -------------------------------------------------------------- emit

template <class F>
Json emit_level(const F& f, const CertConfig& cfg, const LevelCertificate<F>& c) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "level";
    j["config"] = config_json(cfg);
    Json r;
    r["lower"] = c.lower;
    r["upper"] = c.upper;
    r["exact"] = c.exact;
    r["pd"] = c.pd;
    r["formula_value"] = c.formula_value;
    j["result"] = std::move(r);
    Json ev;
    ev["resolution_minimal"] = c.resolution_minimal;
    ev["resolution_acyclic"] = c.resolution_acyclic;
    if (c.tower) {
        Json seq = Json::array();
        for (const auto& p : c.tower->seq) seq.push_back(poly_json(f, p));
        ev["sequence"] = std::move(seq);
        ev["sequence_degrees"] = c.tower->seq_deg;
        Json qs = Json::array();
        for (const auto& q : c.tower->cert.quotient_series) qs.push_back(series_json(q));
        ev["quotient_series"] = std::move(qs);
    }
    if (c.chain) {
        Json links = Json::array();
        for (size_t i = 0; i < c.chain->links.size(); ++i) {
            Json l = chainmap_json(f, c.chain->links[i]);
            l["source_prefix"] = c.chain->link_source_prefix[i];
            links.push_back(std::move(l));
        }
        ev["links"] = std::move(links);
        ev["composite"] = chainmap_json(f, c.chain->composite);
        ev["composite_total_degree"] = c.chain->composite_total_degree;
        ev["obstruction"] = obstruction_json(c.chain->obstruction);
        ev["ghost_evidence"] = c.chain->ghost_evidence;
    }
    j["evidence"] = std::move(ev);
    return j;
}

template <class F>
Json emit_ghost_chain(const F& f, const CertConfig& cfg, const GhostChainReport<F>& c,
                      const DiagonalTower<F>& t) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "ghost-chain";
    j["config"] = config_json(cfg);
    Json r;
    r["links"] = (int)c.links.size();
    r["links_verified"] = c.links_verified;
    r["links_ghost"] = c.links_ghost;
    r["composite_nonzero"] = c.composite_nonzero;
    r["composite_total_degree"] = c.composite_total_degree;
    r["obstruction"] = obstruction_json(c.obstruction);
    j["result"] = std::move(r);
    Json ev;
    Json seq = Json::array();
    for (const auto& p : t.seq) seq.push_back(poly_json(f, p));
    ev["sequence"] = std::move(seq);
    ev["sequence_degrees"] = t.seq_deg;
    Json qs = Json::array();
    for (const auto& q : t.cert.quotient_series) qs.push_back(series_json(q));
    ev["quotient_series"] = std::move(qs);
    Json links = Json::array();
    for (size_t i = 0; i < c.links.size(); ++i) {
        Json l = chainmap_json(f, c.links[i]);
        l["source_prefix"] = c.link_source_prefix[i];
        links.push_back(std::move(l));
    }
    ev["links"] = std::move(links);
    ev["composite"] = chainmap_json(f, c.composite);
    ev["ghost_evidence"] = c.ghost_evidence;
    j["evidence"] = std::move(ev);
    return j;
}

template <class F>
Json emit_tor(const F& f, const CertConfig& cfg, const TorReport<F>& t,
              const DiagonalTower<F>& tower) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "tor";
    j["config"] = config_json(cfg);
    Json r;
    r["total_dim"] = t.total_dim;
    r["complete_up_to"] = t.complete_up_to;
    r["total_degree"] = shifted_json(t.total_degree);
    Json bi = Json::array();
    for (int h = 0; h < (int)t.dims.hi.size(); ++h)
        for (auto [i, v] : t.dims.hi[h]) {
            Json e = Json::array();
            e.push_back(h);
            e.push_back(i);
            e.push_back(v);
            bi.push_back(std::move(e));
        }
    r["bigraded"] = std::move(bi);
    j["result"] = std::move(r);
    Json ev;
    Json seq = Json::array();
    for (const auto& p : tower.seq) seq.push_back(poly_json(f, p));
    ev["sequence"] = std::move(seq);
    ev["module"] = "trivial";
    j["evidence"] = std::move(ev);
    return j;
}

template <class F>
Json emit_ext(const F& f, const CertConfig& cfg, const ExtReport<F>& e) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "ext";
    j["config"] = config_json(cfg);
    Json r;
    r["top"] = e.top;
    r["generator_total_degree"] = e.generator_total_degree;
    r["concentrated"] = e.concentrated;
    r["duality_verified"] = e.duality_verified;
    r["module_dims_match"] = e.module_dims_match;
    r["zero_up_to"] = e.zero_certified_up_to;
    r["generator_dims"] = shifted_json(e.generator_dims);
    j["result"] = std::move(r);
    Json ev;
    ev["generator"] = chainmap_json(f, e.generator);
    j["evidence"] = std::move(ev);
    return j;
}

template <class F>
Json emit_loop(const F& f, const CertConfig& cfg, const LoopGhostReport<F>& r) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "loop";
    j["config"] = config_json(cfg);
    Json res;
    res["refused"] = r.refused;
    res["freeness_failure_degree"] = r.freeness_failure_degree;
    res["basis_degrees"] = r.basis_degrees;
    res["all_null_homotopic"] = r.all_null_homotopic;
    res["nonzero_trials"] = r.nonzero_trials;
    j["result"] = std::move(res);
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json tj;
        tj["hom_shift"] = t.hom_shift;
        tj["int_shift"] = t.int_shift;
        tj["null_homotopic"] = t.null_homotopic;
        tj["ghost"] = chainmap_json(f, t.ghost);
        if (t.null_homotopic) tj["homotopy"] = chainmap_json(f, t.homotopy);
        trials.push_back(std::move(tj));
    }
    Json ev;
    ev["trials"] = std::move(trials);
    j["evidence"] = std::move(ev);
    return j;
}

inline Json emit_em(const CertConfig& cfg, const CollapseReport& r) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "em";
    j["config"] = config_json(cfg);
    Json res;
    res["ok"] = r.ok;
    res["differential_vanishes"] = r.differential_vanishes;
    res["compare_up_to"] = r.compare_up_to;
    res["first_mismatch"] = r.first_mismatch;
    res["computed"] = series_json(r.computed);
    res["expected"] = series_json(r.expected);
    j["result"] = std::move(res);
    j["evidence"] = Json::object();
    return j;
}

inline Json emit_transgression(const CertConfig& cfg, const TransgressionReport& r) {
    Json j;
    j["format"] = kCertFormat;
    j["kind"] = "transgression";
    j["config"] = config_json(cfg);
    Json res;
    res["ok"] = r.ok;
    res["compare_up_to"] = r.compare_up_to;
    res["computed"] = series_json(r.computed);
    res["expected"] = series_json(r.expected);
    j["result"] = std::move(res);
    j["evidence"] = Json::object();
    return j;
}

// -------------------------------------------------------------- verify

struct VerifyOutcome {
    bool ok = true;
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

namespace detail {

template <class F>
void verify_chain_evidence(const F& f, VerifyOutcome& out, const CertConfig& cfg, const Json& ev,
                           const Json* result_obstruction, bool expect_nonzero) {
    auto base = make_polynomial_algebra(cfg.field, cfg.degrees, cfg.D);
    auto tower = diagonal_tower(f, base, cfg.n, true);
    // stored diagonal sequence matches the canonical one
    const auto& seq = ev.at("sequence");
    out.require((int)seq.size() == tower.N, "sequence length");
    for (int l = 0; l < tower.N && l < (int)seq.size(); ++l) {
        auto p = poly_from_json(f, *tower.power, seq[l]);
        out.require(rsub(f, p, tower.seq[l]).is_zero(), "sequence element " + std::to_string(l));
    }
    // quotient series: recompute and compare
    auto cert = regular_sequence_certificate(f, *tower.power, tower.seq);
    out.require(cert.ok, "regular-sequence certificate");
    const auto& qs = ev.at("quotient_series");
    out.require((int)qs.size() == tower.N + 1, "quotient series count");
    for (int m = 0; m < (int)qs.size() && m <= tower.N; ++m)
        out.require(qs[m].get<std::vector<long long>>() == cert.quotient_series[m].c,
                    "quotient series " + std::to_string(m));
    // links: parse against the rebuilt prefixes, verify symbolically
    std::vector<ChainMap<F>> links;
    for (const auto& lj : ev.at("links")) {
        int src_prefix = lj.at("source_prefix").get<int>();
        int hs = lj.at("hom_shift").get<int>();
        int tgt_prefix = src_prefix + hs;
        out.require(src_prefix >= 1 && src_prefix <= tower.N && tgt_prefix >= 0, "link prefixes");
        auto l = chainmap_from_json(f, tower.prefixes[src_prefix], tower.prefixes[tgt_prefix], lj);
        out.require(verify_chain_map(f, l), "link chain identity");
        links.push_back(std::move(l));
    }
    if (!links.empty()) {
        auto comp = links[0];
        for (size_t i = 1; i < links.size(); ++i) comp = compose(f, comp, links[i]);
        auto stored = chainmap_from_json(f, links[0].src, tower.prefixes[0], ev.at("composite"));
        out.require(stored.hom_shift == comp.hom_shift && stored.int_shift == comp.int_shift,
                    "composite shifts");
        bool same = stored.comps.size() == comp.comps.size();
        for (size_t h = 0; same && h < comp.comps.size(); ++h)
            same = rmat_sub(f, stored.comps[h], comp.comps[h]).is_zero();
        out.require(same, "composite equals the product of links");
        auto hres = null_homotopy(f, comp);
        out.require(hres.null_homotopic != expect_nonzero, "composite nonvanishing");
        if (expect_nonzero && hres.obstruction && result_obstruction) {
            out.require(hres.obstruction->hom_degree ==
                                result_obstruction->at("hom_degree").get<int>() &&
                            hres.obstruction->src_internal ==
                                result_obstruction->at("src_internal").get<int>() &&
                            hres.obstruction->tgt_internal ==
                                result_obstruction->at("tgt_internal").get<int>(),
                        "recorded obstruction");
        }
    }
}

}  // namespace detail

inline VerifyOutcome verify_certificate(const Json& cert) {
    VerifyOutcome out;
    out.require(cert.value("format", "") == kCertFormat, "certificate format");
    if (!out.ok) return out;
    CertConfig cfg = config_from_json(cert.at("config"));
    std::string kind = cert.at("kind").get<std::string>();
    const Json& result = cert.at("result");
    const Json& ev = cert.at("evidence");

    with_field(cfg.field, [&](auto field) {
        using F = decltype(field);
        if (kind == "level") {
            bool exact = result.at("exact").get<bool>();
            int lower = result.at("lower").get<int>();
            int upper = result.at("upper").get<int>();
            out.require(lower <= upper, "lower <= upper");
            int s = (int)cfg.degrees.size();
            out.require(result.at("formula_value").get<int>() == (cfg.n - 1) * s + 1,
                        "formula value");
            if (cfg.n == 1) {
                out.require(lower == 1 && upper == 1 && exact, "n = 1 level");
                return;
            }
            out.require(result.at("pd").get<int>() == (cfg.n - 1) * s, "pd = s(n-1)");
            out.require(upper == result.at("pd").get<int>() + 1, "upper = pd + 1");
            if (exact) out.require(lower == upper, "exact means equal bounds");
            detail::verify_chain_evidence(field, out, cfg, ev,
                                          ev.contains("obstruction") ? &ev.at("obstruction")
                                                                     : nullptr,
                                          /*expect_nonzero=*/true);
        } else if (kind == "ghost-chain") {
            detail::verify_chain_evidence(field, out, cfg, ev,
                                          result.contains("obstruction")
                                              ? &result.at("obstruction")
                                              : nullptr,
                                          result.at("composite_nonzero").get<bool>());
        } else if (kind == "tor") {
            auto base = make_polynomial_algebra(cfg.field, cfg.degrees, cfg.D);
            auto tower = diagonal_tower(field, base, cfg.n, false);
            auto tor = tor_trivial(field, tower);
            out.require(tor.total_dim == result.at("total_dim").get<long long>(), "total dim");
            ShiftedDims want;
            want.offset = result.at("total_degree").at("offset").get<int>();
            want.c = result.at("total_degree").at("c").get<std::vector<long long>>();
            for (int d = want.min_degree(); d <= want.max_degree(); ++d)
                out.require(tor.total_degree.at(d) == want.at(d),
                            "total-degree dims at " + std::to_string(d));
            for (const auto& e : result.at("bigraded"))
                out.require(tor.dims.at(e.at(0).get<int>(), e.at(1).get<int>()) ==
                                e.at(2).get<long long>(),
                            "bigraded dim");
        } else if (kind == "ext") {
            auto comp = ext_computation(field, cfg.field, cfg.degrees, cfg.D, cfg.n);
            const auto& ext = comp.report;
            out.require(ext.concentrated == result.at("concentrated").get<bool>(),
                        "concentration");
            out.require(ext.generator_total_degree ==
                            result.at("generator_total_degree").get<int>(),
                        "generator degree");
            out.require(ext.zero_certified_up_to == result.at("zero_up_to").get<int>(),
                        "vanishing range");
            out.require(ext.generator_dims.total() == 1, "generator count");
            auto gen = chainmap_from_json(field, comp.tower.resolution(), comp.tower.prefixes[0],
                                          ev.at("generator"));
            out.require(verify_chain_map(field, gen), "generator cocycle");
            auto hres = null_homotopy(field, gen);
            out.require(!hres.null_homotopic, "generator nonzero");
        } else if (kind == "loop") {
            auto base = make_polynomial_algebra(cfg.field, cfg.degrees, cfg.D);
            auto L = loop_module(field, base);
            auto w = is_free(field, L.module);
            bool refused = result.at("refused").get<bool>();
            out.require(w.free != refused, "freeness agrees");
            if (refused) return;
            std::vector<int> degs;
            for (const auto& g : w.basis) degs.push_back(g.degree);
            out.require(degs == result.at("basis_degrees").get<std::vector<int>>(),
                        "witness basis degrees");
            auto src = std::make_shared<FreeComplex<F>>();
            src->ring = base;
            FreeModule fm;
            fm.gen_degrees = degs;
            src->modules.push_back(fm);
            src->diffs.resize(1);
            std::vector<RElem<F>> xs;
            for (int i = 0; i < base->num_generators(); ++i)
                xs.push_back(RElem<F>::monomial(field, base->generator_monomial(i), field.one()));
            auto tgt = std::make_shared<FreeComplex<F>>(koszul_complex(field, base, xs));
            for (const auto& tj : ev.at("trials")) {
                auto g = chainmap_from_json(field, ComplexPtr<F>(src), ComplexPtr<F>(tgt),
                                            tj.at("ghost"));
                out.require(verify_chain_map(field, g), "trial ghost is a chain map");
                out.require(is_ghost(field, g), "trial map kills homology");
                out.require(tj.at("null_homotopic").get<bool>(), "trial null-homotopic flag");
                if (tj.contains("homotopy")) {
                    auto H = chainmap_from_json(field, ComplexPtr<F>(src), ComplexPtr<F>(tgt),
                                                tj.at("homotopy"));
                    out.require(verify_homotopy(field, g, H), "trial homotopy identity");
                } else {
                    out.require(false, "trial missing homotopy");
                }
            }
        } else if (kind == "em") {
            auto base = make_polynomial_algebra(cfg.field, cfg.degrees, cfg.D);
            auto r = em_collapse_check(field, base, cfg.n);
            out.require(r.ok == result.at("ok").get<bool>(), "collapse outcome");
            out.require(r.computed.c == result.at("computed").get<std::vector<long long>>(),
                        "computed series");
            out.require(r.expected.c == result.at("expected").get<std::vector<long long>>(),
                        "expected series");
        } else if (kind == "transgression") {
            auto base = make_polynomial_algebra(cfg.field, cfg.degrees, cfg.D);
            auto r = transgression_check(field, base);
            out.require(r.ok == result.at("ok").get<bool>(), "transgression outcome");
            out.require(r.computed.c == result.at("computed").get<std::vector<long long>>(),
                        "computed series");
        } else {
            out.require(false, "unknown certificate kind: " + kind);
        }
    });
    return out;
}

inline VerifyOutcome verify_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        VerifyOutcome out;
        out.require(false, "cannot open " + path);
        return out;
    }
    Json j;
    try {
        in >> j;
        return verify_certificate(j);
    } catch (const std::exception& e) {
        VerifyOutcome out;
        out.require(false, std::string("parse error: ") + e.what());
        return out;
    }
}

inline void write_certificate_atomic(const std::string& path, const Json& j) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw error("cannot write " + tmp);
        out << j.dump(1, ' ') << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw error("cannot rename " + tmp);
}

}  // namespace ghl
