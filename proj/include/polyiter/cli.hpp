#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "approximation.hpp"
#include "census.hpp"
#include "construction.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "verify.hpp"

namespace polyiter::cli {

using io::json;

enum Exit : int { ok = 0, failed = 1, usage = 2 };

namespace detail {

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

inline std::string render_float(const mpq_class& v) {
    std::ostringstream s;
    s << std::setprecision(10) << v.get_d();
    return s.str();
}

inline std::string join_coeffs(const census::FpCoeffs& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
    return s;
}

/// Flags shared by construct, verify and word.
struct PolyInput {
    std::string field = "Q";
    std::string poly;
    std::string json_poly;
    std::string anchors;
    std::size_t n = 0;
    std::string mode = "auto";

    void attach(CLI::App* app) {
        app->add_option("--field", field, "Q or Fp:<prime>")->capture_default_str();
        auto* p = app->add_option("--poly", poly, "ascending coefficients, e.g. \"1,0,1\" for x^2+1");
        auto* j = app->add_option("--json", json_poly, "polynomial as {\"coeffs\": [...]}, or @file");
        p->excludes(j);
        app->add_option("--anchors", anchors, "comma separated a_1..a_{r-1}");
        app->add_option("--n", n, "override n >= max(2, deg Q + 1)");
        app->add_option("--mode", mode, "iterate route")
            ->check(CLI::IsMember({"auto", "exact", "windowed"}))
            ->capture_default_str();
    }

    bool has_poly() const { return !poly.empty() || !json_poly.empty(); }

    ScalarPoly target(const Field& f) const {
        if (!json_poly.empty()) {
            const std::string text = json_poly.front() == '@' ? read_text(json_poly.substr(1)) : json_poly;
            return io::poly_from_json(parse_json_text(text), f);
        }
        return parse_poly(poly, f);
    }

    std::optional<Anchors> anchor_set(const Field& f) const {
        if (anchors.empty()) return std::nullopt;
        std::vector<Scalar> v;
        for (const auto& a : split_csv(anchors)) v.push_back(Scalar::parse(a, f));
        return Anchors(f, std::move(v));
    }

    VerifyOptions options() const {
        VerifyOptions o;
        o.mode = mode == "exact" ? IterateMode::Exact : mode == "windowed" ? IterateMode::Windowed : IterateMode::Auto;
        return o;
    }

    ConstructionData build(std::size_t r) const {
        const Field f = Field::parse(field);
        if (!has_poly()) throw parse_error("--poly or --json is required");
        return build_P(target(f), r, anchor_set(f), n ? std::optional<std::size_t>(n) : std::nullopt);
    }
};

inline json verify_json(ConstructionData& d, const VerifyOptions& opt, bool timing, bool& passed) {
    const VerificationReport key = verify_key_congruence(d, opt);
    const LemmaReport lemmas = verify_lemma_suite(d, opt);
    passed = key.passed && lemmas.passed();
    json out;
    out["passed"] = passed;
    out["field"] = d.field.to_string();
    out["r"] = d.r;
    out["n"] = d.n;
    out["Q"] = io::to_json(d.Q);
    out["key_congruence"] = io::to_json(key, timing);
    out["lemmas"] = io::to_json(lemmas, timing);
    return out;
}

} // namespace detail

/// Runs one subcommand; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Witness polynomials for power word maps, with exact verification."};
    app.name("polyiter");
    app.require_subcommand(1, 1);
    bool timing = false;
    app.add_flag("--timing", timing, "include wall-clock timings in JSON reports");

    detail::PolyInput construct_in;
    std::size_t construct_r = 0;
    auto* construct = app.add_subcommand("construct", "build the witness P for a target Q and power r");
    construct_in.attach(construct);
    construct->add_option("--r", construct_r, "power r >= 1")->required()->check(CLI::PositiveNumber);

    detail::PolyInput verify_in;
    std::size_t verify_r = 0;
    std::string verify_file;
    auto* verify = app.add_subcommand("verify", "check P^r == Q mod eps and the supporting identities");
    verify_in.attach(verify);
    auto* vr = verify->add_option("--r", verify_r, "power r >= 1")->check(CLI::PositiveNumber);
    auto* vc = verify->add_option("--construction", verify_file, "JSON written by construct");
    vc->excludes(vr);

    std::string approx_field = "Q";
    std::string approx_poly;
    std::size_t approx_r = 0;
    std::vector<std::string> approx_places;
    std::string approx_eps;
    std::string approx_eta;
    std::string approx_format = "csv";
    bool approx_float = false;
    auto* approx = app.add_subcommand("approx", "specialize eps and measure |P_e^r - Q| at places of Q");
    approx->add_option("--field", approx_field, "must be Q")->capture_default_str();
    approx->add_option("--poly", approx_poly, "target Q, ascending coefficients")->required();
    approx->add_option("--r", approx_r, "power r >= 1")->required()->check(CLI::PositiveNumber);
    approx->add_option("--place", approx_places, "inf or p:<prime>; repeatable");
    auto* ae = approx->add_option("--eps", approx_eps, "comma separated epsilons for a convergence table");
    auto* aeta = approx->add_option("--eta", approx_eta, "search one epsilon good at every place");
    ae->excludes(aeta);
    approx->add_option("--format", approx_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    approx->add_flag("--float", approx_float, "add floating-point columns");

    std::uint64_t census_q = 0;
    std::uint64_t census_r = 2;
    std::string census_d;
    std::uint64_t census_limit = census::default_limit();
    std::string census_format = "csv";
    bool census_list = false;
    bool census_float = false;
    std::uint64_t census_question = 0;
    auto* cen = app.add_subcommand("census", "count r-th iterates of degree <= d over F_q");
    cen->add_option("--q", census_q, "prime field size")->required();
    cen->add_option("--r", census_r, "power r >= 2")->capture_default_str();
    auto* cd = cen->add_option("--d", census_d, "comma separated degree bounds");
    auto* cq = cen->add_option("--question", census_question, "print q^(-d-1)|Iterates(d^r, r)| for d = 1..N");
    cd->excludes(cq);
    cen->add_option("--limit", census_limit, "maximum number of maps to enumerate")->capture_default_str();
    cen->add_option("--format", census_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cen->add_flag("--list", census_list, "list every iterate");
    cen->add_flag("--float", census_float, "add a floating-point ratio column");

    std::string word_text;
    detail::PolyInput word_in;
    bool word_verify = false;
    auto* word = app.add_subcommand("word", "reduce a power word x1^m1 ... xs^ms to its total exponent");
    word->add_option("--word", word_text, "e.g. \"x1^2 x2^3\"")->required();
    word_in.attach(word);
    word->add_flag("--verify", word_verify, "also verify the construction");

    std::vector<std::string> argv_store{"polyiter"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };

    try {
        if (*construct) {
            const ConstructionData d = construct_in.build(construct_r);
            emit(io::to_json(d));
            return ok;
        }

        if (*verify) {
            ConstructionData d;
            if (!verify_file.empty()) {
                if (verify_in.has_poly()) throw parse_error("--construction replaces --poly/--json");
                d = io::construction_from_json(detail::parse_json_text(detail::read_text(verify_file)));
            } else {
                if (verify_r == 0) throw parse_error("--r or --construction is required");
                d = verify_in.build(verify_r);
            }
            bool passed = false;
            emit(detail::verify_json(d, verify_in.options(), timing, passed));
            return passed ? ok : failed;
        }

        if (*approx) {
            const Field f = Field::parse(approx_field);
            if (!f.is_rational()) throw field_mismatch("approx works over Q");
            const ScalarPoly q = parse_poly(approx_poly, f);
            std::vector<Place> places;
            for (const auto& p : approx_places) places.push_back(Place::parse(p));
            if (places.empty()) places.push_back(Place::archimedean());

            if (!approx_eta.empty()) {
                const Scalar eta = Scalar::parse(approx_eta, f);
                const MultiPlaceResult res =
                    find_epsilon_multi_place({q, approx_r, places, eta.as_rational()});
                if (approx_format == "json") {
                    json norms = json::array();
                    for (const auto& [pl, nv] : res.norms)
                        norms.push_back({{"place", pl.to_string()}, {"norm", nv.get_str()}});
                    emit({{"epsilon", res.epsilon.to_string()},
                          {"m", res.m},
                          {"m_prime", res.m_prime},
                          {"auxiliary_prime", res.auxiliary_prime},
                          {"eta", eta.to_string()},
                          {"deg_P", res.deg_P},
                          {"degree_bound", res.degree_bound},
                          {"candidates_tried", res.candidates_tried},
                          {"norms", norms}});
                } else {
                    out << "epsilon,place,norm,eta" << (approx_float ? ",norm_float" : "") << "\n";
                    for (const auto& [pl, nv] : res.norms) {
                        out << res.epsilon.to_string() << "," << pl.to_string() << "," << nv.get_str() << ","
                            << eta.to_string();
                        if (approx_float) out << "," << detail::render_float(nv);
                        out << "\n";
                    }
                }
                return ok;
            }

            if (approx_eps.empty()) throw parse_error("approx needs --eps or --eta");
            std::vector<Scalar> eps;
            for (const auto& e : detail::split_csv(approx_eps)) {
                Scalar s = Scalar::parse(e, f);
                if (s.is_zero()) throw zero_specialization();
                eps.push_back(std::move(s));
            }
            std::vector<ConvergenceRow> rows;
            for (const auto& pl : places) {
                auto part = convergence_table(q, approx_r, pl, eps);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            if (approx_format == "json") {
                json arr = json::array();
                for (const auto& row : rows) {
                    json j{{"epsilon", row.epsilon.to_string()},
                           {"place", row.place.to_string()},
                           {"error_norm", row.error_norm.get_str()},
                           {"ratio", row.ratio.get_str()}};
                    if (approx_float) {
                        j["error_norm_float"] = detail::render_float(row.error_norm);
                        j["ratio_float"] = detail::render_float(row.ratio);
                    }
                    arr.push_back(std::move(j));
                }
                emit(arr);
            } else {
                out << "epsilon,place,error_norm,ratio" << (approx_float ? ",error_norm_float,ratio_float" : "")
                    << "\n";
                for (const auto& row : rows) {
                    out << row.epsilon.to_string() << "," << row.place.to_string() << "," << row.error_norm.get_str()
                        << "," << row.ratio.get_str();
                    if (approx_float)
                        out << "," << detail::render_float(row.error_norm) << "," << detail::render_float(row.ratio);
                    out << "\n";
                }
            }
            return ok;
        }

        if (*cen) {
            if (census_question > 0) {
                const auto seq = census::question_sequence(census_q, census_r, census_question, census_limit);
                if (census_format == "json") {
                    json arr = json::array();
                    for (std::size_t i = 0; i < seq.size(); ++i)
                        arr.push_back({{"d", i + 1}, {"value", seq[i].get_str()}});
                    emit(arr);
                } else {
                    out << "d,value" << (census_float ? ",value_float" : "") << "\n";
                    for (std::size_t i = 0; i < seq.size(); ++i) {
                        out << i + 1 << "," << seq[i].get_str();
                        if (census_float) out << "," << detail::render_float(seq[i]);
                        out << "\n";
                    }
                }
                return ok;
            }
            if (census_d.empty()) throw parse_error("census needs --d or --question");
            std::vector<std::uint64_t> ds;
            for (const auto& s : detail::split_csv(census_d)) {
                try {
                    std::size_t pos = 0;
                    const unsigned long long v = std::stoull(s, &pos);
                    if (pos != s.size()) throw parse_error("bad degree " + s);
                    ds.push_back(v);
                } catch (const std::logic_error&) {
                    throw parse_error("bad degree " + s);
                }
            }
            for (auto d : ds) census::check_request(census_q, d, census_r, census_limit);
            std::vector<census::CensusResult> results;
            for (auto d : ds) results.push_back(census::enumerate_iterates(census_q, d, census_r, census_limit));
            if (census_format == "json") {
                json arr = json::array();
                for (const auto& res : results) {
                    const auto& row = res.row;
                    json j{{"q", row.q},
                           {"r", row.r},
                           {"d", row.d},
                           {"root_degree", row.root_degree},
                           {"count", row.count},
                           {"total", row.total.get_str()},
                           {"ratio", row.ratio.get_str()},
                           {"bound", row.bound.get_str()}};
                    if (census_float) j["ratio_float"] = detail::render_float(row.ratio);
                    if (census_list) {
                        json its = json::array();
                        for (const auto& it : res.iterates) its.push_back(it);
                        j["iterates"] = its;
                    }
                    arr.push_back(std::move(j));
                }
                emit(arr);
            } else if (census_list) {
                out << "q,r,d,iterate\n";
                for (const auto& res : results)
                    for (const auto& it : res.iterates)
                        out << res.row.q << "," << res.row.r << "," << res.row.d << "," << detail::join_coeffs(it)
                            << "\n";
            } else {
                out << "q,r,d,root_degree,count,total,ratio,bound" << (census_float ? ",ratio_float" : "") << "\n";
                for (const auto& res : results) {
                    const auto& row = res.row;
                    out << row.q << "," << row.r << "," << row.d << "," << row.root_degree << "," << row.count << ","
                        << row.total.get_str() << "," << row.ratio.get_str() << "," << row.bound.get_str();
                    if (census_float) out << "," << detail::render_float(row.ratio);
                    out << "\n";
                }
            }
            return ok;
        }

        if (*word) {
            const auto letters = parse_word(word_text);
            const std::uint64_t power = word_total_exponent(letters);
            json j;
            j["word"] = word_text;
            json ls = json::array();
            for (const auto& l : letters) ls.push_back(json::array({l.generator, l.exponent}));
            j["letters"] = ls;
            j["power"] = power;
            if (!word_in.has_poly()) {
                if (word_verify) throw parse_error("--verify needs --poly or --json");
                emit(j);
                return ok;
            }
            ConstructionData d = word_in.build(static_cast<std::size_t>(power));
            j["construction"] = io::to_json(d);
            bool passed = true;
            if (word_verify) j["verification"] = detail::verify_json(d, word_in.options(), timing, passed);
            emit(j);
            return passed ? ok : failed;
        }
    } catch (const iteration_cap& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    } catch (const internal_consistency& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    } catch (const verification_failed& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

} // namespace polyiter::cli
