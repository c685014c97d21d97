// ncalg command-line front end.  Every subcommand prints an aligned table by
// default or a JSON document with --json; exit codes are 0 (success or an
// affirmative answer), 2 (a negative mathematical finding) and 1 (bad usage or
// input).
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncalg/errors.hpp"
#include "ncalg/groebner.hpp"
#include "ncalg/hilbert.hpp"
#include "ncalg/morphisms.hpp"
#include "ncalg/presentation.hpp"
#include "ncalg/quadratic.hpp"
#include "ncalg/resolution.hpp"

#ifndef NCALG_VERSION
#define NCALG_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace ncalg;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegative = 2;

struct Global {
    bool json = false;
    bool progress = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Presentation family(const std::string& name, int n, bool substituted) {
    const bool needs_n = name == "mccool" || name == "ug";
    if (needs_n && n < 2) throw Error("family " + name + " needs --n >= 2");
    if (substituted && name != "ug") throw Error("--substituted applies to the ug family only");
    if (name == "mccool") return mccool_cohomology(n);
    if (name == "ug") {
        Presentation p = u_g(n);
        return substituted ? apply_substitution(p, column_sum_substitution(p, n)) : p;
    }
    if (name == "ugmodh") return u_g_mod_h();
    if (name == "ugmodh-dual") return u_g_mod_h_dual();
    throw Error("unknown family '" + name + "' (mccool, ug, ugmodh, ugmodh-dual)");
}

struct Input {
    std::string label;
    std::string text;
};

/// A file path, "-" for stdin, or family:NAME[:N[:substituted]].
Input read_input(const std::string& arg) {
    constexpr std::string_view prefix = "family:";
    if (arg.rfind(prefix, 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(arg.substr(prefix.size()));
        for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
        if (parts.empty()) throw Error("empty family reference");
        int n = 0;
        if (parts.size() > 1) {
            try {
                n = std::stoi(parts[1]);
            } catch (const std::exception&) {
                throw Error("bad n in " + arg);
            }
        }
        const bool sub = parts.size() > 2 && parts[2] == "substituted";
        return {arg, family(parts[0], n, sub).to_text()};
    }
    return {arg, read_file(arg)};
}

Presentation load_presentation(const Input& in) { return parse_presentation(in.text, in.label); }

MonomialOrder parse_order(const Presentation& p, const std::string& spec) {
    return MonomialOrder::parse(p.alphabet_ptr(), spec.empty() ? "deglex:default" : spec);
}

json big(const BigInt& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

json big_list(const std::vector<BigInt>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(big(x));
    return a;
}

class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void print(std::ostream& os) const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (width.size() <= c) width.push_back(0);
                width[c] = std::max(width[c], r[c].size());
            }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t c = 0; c < r.size(); ++c) {
                std::string cell = r[c];
                if (c + 1 < r.size()) cell.resize(width[c], ' ');
                line += (c ? "  " : "") + cell;
            }
            os << line << "\n";
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

// Wall time covers the whole run, parsing included.
const auto kProcessStart = std::chrono::steady_clock::now();

struct Manifest {
    std::string command;
    std::vector<Input> inputs;
    std::string order;
    std::optional<std::size_t> truncation;
    std::string strategy;

    json to_json() const {
        json m;
        m["command"] = command;
        json files = json::array();
        std::string joined;
        for (const auto& in : inputs) {
            files.push_back(in.label);
            joined += sha256_hex(in.text);
        }
        m["inputs"] = files;
        m["inputHash"] = inputs.size() == 1 ? sha256_hex(inputs[0].text) : sha256_hex(joined);
        m["order"] = order;
        m["truncation"] = truncation ? json(*truncation) : json(nullptr);
        m["strategy"] = strategy;
        m["toolVersion"] = NCALG_VERSION;
        m["wallSeconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - kProcessStart).count();
        return m;
    }
};

void emit(const Global& g, json body, const Manifest& m, const std::function<void(std::ostream&)>& plain) {
    if (g.json) {
        body["manifest"] = m.to_json();
        std::cout << body.dump(2) << "\n";
    } else {
        plain(std::cout);
    }
}

GroebnerOptions gb_options(const Global& g) {
    GroebnerOptions o;
    o.threads = g.threads;
    if (g.progress)
        o.progress = [](const DegreeStats& s) {
            std::fprintf(stderr, "degree %u: %zu obstructions, %zu normal words, %.2fs\n", s.degree, s.obstructions,
                         s.normal, s.seconds);
        };
    return o;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

// ---- subcommands ----

int cmd_family(const Global& g, const std::string& name, int n, bool substituted) {
    Manifest m{"family", {}, "", std::nullopt, ""};
    Presentation p = family(name, n, substituted);
    const std::string text = p.to_text();
    if (!g.json) {
        std::cout << text;
        return kOk;
    }
    json j;
    j["family"] = name;
    j["n"] = n ? json(n) : json(nullptr);
    j["algebra"] = p.name();
    j["generators"] = p.alphabet().names();
    j["relationCount"] = p.relations().size();
    j["text"] = text;
    emit(g, j, m, nullptr);
    return kOk;
}

int cmd_hilbert(const Global& g, const std::string& file, std::size_t d, const std::string& order_spec, bool oracle) {
    if (d < 2) throw Error("--max-degree must be >= 2");
    Input in = read_input(file);
    Presentation p = load_presentation(in);
    MonomialOrder order = parse_order(p, order_spec);
    Manifest m{"hilbert", {in}, order.to_string(), d, "exact-rational"};
    auto gb = compute_gb(p, order, d, gb_options(g));
    HilbertSeries h = hilbert_series(gb, d);
    std::optional<HilbertSeries> brute;
    if (oracle) brute = brute_force_hilbert(p, d);
    json j;
    j["algebra"] = p.name();
    j["maxDegree"] = d;
    j["coefficients"] = big_list(h.coefficients);
    if (brute) {
        j["oracleCoefficients"] = big_list(brute->coefficients);
        j["agreement"] = *brute == h;
    }
    emit(g, j, m, [&](std::ostream& os) {
        os << "algebra " << p.name() << "\n";
        Table t(brute ? std::vector<std::string>{"degree", "dim", "oracle"} : std::vector<std::string>{"degree", "dim"});
        for (std::size_t k = 0; k <= d; ++k) {
            std::vector<std::string> row{std::to_string(k), h[k].get_str()};
            if (brute) row.push_back((*brute)[k].get_str());
            t.add(row);
        }
        t.print(os);
        if (brute) os << "agreement " << (*brute == h ? "true" : "false") << "\n";
    });
    return brute && !(*brute == h) ? kNegative : kOk;
}

int cmd_koszul(const Global& g, const std::string& file, std::size_t d, const std::string& order_spec) {
    if (d < 2) throw Error("--max-degree must be >= 2");
    Input in = read_input(file);
    Presentation p = load_presentation(in);
    if (!p.is_quadratic()) throw RelationError("koszul needs a quadratic presentation");
    MonomialOrder order = parse_order(p, order_spec);
    Manifest m{"koszul", {in}, order.to_string(), d, "exact-rational"};
    auto gb = compute_gb(p, order, d, gb_options(g));
    HilbertSeries h = hilbert_series(gb, d);
    Presentation dual = quadratic_dual(quadratic_data(p));
    auto dual_gb = compute_gb(dual, dual.order(), d, gb_options(g));
    HilbertSeries hd = hilbert_series(dual_gb, d);
    KoszulDefectReport rep = koszul_series_test(h, hd, d);
    json j;
    j["algebra"] = p.name();
    j["maxDegree"] = d;
    j["series"] = big_list(h.coefficients);
    j["dualSeries"] = big_list(hd.coefficients);
    j["product"] = big_list(rep.product);
    j["firstDefect"] = rep.first_defect ? json(*rep.first_defect) : json(nullptr);
    j["defectValue"] = rep.first_defect ? big(rep.product[*rep.first_defect]) : json(nullptr);
    j["dualVanishesInDegree3"] = rep.dual_vanishes_in_degree3;
    j["conclusive"] = rep.conclusive;
    emit(g, j, m, [&](std::ostream& os) {
        os << "algebra " << p.name() << "\n";
        Table t({"degree", "dim", "dual dim", "product"});
        for (std::size_t k = 0; k <= d; ++k)
            t.add({std::to_string(k), h[k].get_str(), hd[k].get_str(), rep.product[k].get_str()});
        t.print(os);
        if (rep.first_defect)
            os << "defect at degree " << *rep.first_defect << " value " << rep.product[*rep.first_defect].get_str()
               << "\n";
        else
            os << "no defect through degree " << d << "\n";
        os << "conclusive " << (rep.conclusive ? "true" : "false") << "\n";
    });
    return rep.first_defect ? kNegative : kOk;
}

int cmd_gb(const Global& g, const std::string& file, std::size_t d, const std::string& order_spec) {
    Input in = read_input(file);
    Presentation p = load_presentation(in);
    MonomialOrder order = parse_order(p, order_spec);
    Manifest m{"gb", {in}, order.to_string(), d, "exact-rational"};
    auto gb = compute_gb(p, order, d, gb_options(g));
    json j;
    j["algebra"] = p.name();
    j["maxDegree"] = d;
    json degrees = json::array();
    json elems = json::array();
    json obs = json::array();
    for (std::size_t k = 1; k <= d; ++k) {
        degrees.push_back({{"degree", k}, {"size", gb.size(k)}, {"normalWords", gb.normal_word_count(k)}});
        for (const auto& e : gb.elements(k)) elems.push_back(e.to_string());
        for (const auto& w : gb.obstructions(k)) obs.push_back(w.to_string(p.alphabet()));
    }
    j["degrees"] = degrees;
    j["obstructions"] = obs;
    j["elements"] = elems;
    emit(g, j, m, [&](std::ostream& os) {
        os << "algebra " << p.name() << "  order " << order.to_string() << "\n";
        Table t({"degree", "basis elements", "normal words"});
        for (std::size_t k = 1; k <= d; ++k)
            t.add({std::to_string(k), std::to_string(gb.size(k)), std::to_string(gb.normal_word_count(k))});
        t.print(os);
        for (const auto& e : elems) os << e.get<std::string>() << "\n";
    });
    return kOk;
}

int cmd_dual(const Global& g, const std::string& file) {
    Input in = read_input(file);
    Presentation p = load_presentation(in);
    Manifest m{"dual", {in}, "", std::nullopt, "exact-rational"};
    Presentation dual = quadratic_dual(quadratic_data(p));
    if (!g.json) {
        std::cout << dual.to_text();
        return kOk;
    }
    json j;
    j["algebra"] = p.name();
    j["dual"] = dual.name();
    j["relationCount"] = dual.relations().size();
    j["text"] = dual.to_text();
    emit(g, j, m, nullptr);
    return kOk;
}

json pbw_json(const PbwResult& r, const Alphabet& al) {
    json j;
    j["order"] = r.order;
    j["pbw"] = r.pbw;
    if (r.witness) {
        j["witness"] = {{"word", r.witness->word.to_string(al)},
                        {"elements", {r.witness_elements[0].to_string(), r.witness_elements[1].to_string()}},
                        {"normalForm", r.witness_normal_form->to_string()}};
    }
    return j;
}

int cmd_pbw(const Global& g, const std::string& file, const std::string& order_spec, std::size_t samples,
            std::uint64_t seed) {
    Input in = read_input(file);
    Presentation p = load_presentation(in);
    MonomialOrder order = parse_order(p, order_spec);
    Manifest m{"pbw", {in}, order.to_string(), 3, "exact-rational"};
    std::vector<PbwResult> results{pbw_check(p, order)};
    std::mt19937_64 rng(seed);
    std::vector<std::string> names = p.alphabet().names();
    for (std::size_t s = 0; s < samples; ++s) {
        std::shuffle(names.begin(), names.end(), rng);
        results.push_back(pbw_check(p, MonomialOrder::parse(p.alphabet_ptr(), "deglex:" + join(names, ">"))));
    }
    bool any = false;
    json arr = json::array();
    for (const auto& r : results) {
        any = any || r.pbw;
        arr.push_back(pbw_json(r, p.alphabet()));
    }
    json j;
    j["algebra"] = p.name();
    j["results"] = arr;
    j["pbw"] = any;
    emit(g, j, m, [&](std::ostream& os) {
        os << "algebra " << p.name() << "\n";
        Table t({"order", "pbw", "witness"});
        for (const auto& r : results)
            t.add({r.order, r.pbw ? "true" : "false", r.witness ? r.witness->word.to_string(p.alphabet()) : ""});
        t.print(os);
    });
    return any ? kOk : kNegative;
}

int cmd_betti(const Global& g, const std::string& file, std::size_t max_i, std::size_t max_j, bool exact,
              std::uint64_t seed, std::size_t recheck, bool blocks) {
    Input in = read_input(file);
    Presentation p = load_presentation(in);
    // The modular strategy reads the top internal degree off its own bases.
    const bool one_past = !exact && max_i >= 3 && max_j >= 4;
    auto gb = compute_gb(p, p.order(), std::max<std::size_t>(one_past ? max_j - 1 : max_j, 2), gb_options(g));
    BettiOptions o;
    o.strategy = exact ? BettiStrategy::Exact : BettiStrategy::Modular;
    o.seed = seed;
    o.exact_recheck_degree = recheck;
    o.threads = g.threads;
    if (g.progress) o.progress = [](const std::string& s) { std::fprintf(stderr, "%s\n", s.c_str()); };
    BettiTable t = betti_numbers(gb, max_i, max_j, o);
    Manifest m{"betti", {in}, p.order().to_string(), max_j, t.strategy_tag()};
    HilbertSeries h = hilbert_series(gb, gb.truncation_degree());
    if (t.top_dimension) h.coefficients.emplace_back(static_cast<unsigned long>(*t.top_dimension));
    std::vector<BigInt> residual = euler_check(h, t, max_j);
    json j;
    j["algebra"] = p.name();
    j["maxI"] = max_i;
    j["maxJ"] = max_j;
    j["strategy"] = t.strategy_tag();
    j["exactRecheckDegree"] = t.exact_recheck_degree;
    j["fellBackToExact"] = t.fell_back_to_exact;
    j["dimensions"] = big_list(h.coefficients);
    json entries = json::array();
    for (const auto& [ij, v] : t.entries) entries.push_back({{"i", ij.first}, {"j", ij.second}, {"value", v}});
    j["entries"] = entries;
    j["eulerResidual"] = big_list(residual);
    if (blocks) {
        json b = json::array();
        for (const auto& s : t.blocks)
            b.push_back({{"degree", s.internal_degree}, {"key", s.key}, {"columns", s.columns}, {"rows", s.rows},
                         {"kernel", s.kernel}, {"maxColumnNonzeros", s.max_column_nonzeros},
                         {"products", s.products}, {"productRank", s.product_rank}});
        j["blocks"] = b;
    }
    emit(g, j, m, [&](std::ostream& os) {
        os << "algebra " << p.name() << "  strategy " << t.strategy_tag() << "\n";
        std::vector<std::string> header{"i\\j"};
        for (std::size_t c = 0; c <= max_j; ++c) header.push_back(std::to_string(c));
        Table tab(header);
        for (std::size_t i = 0; i <= max_i; ++i) {
            std::vector<std::string> row{std::to_string(i)};
            for (std::size_t c = 0; c <= max_j; ++c) row.push_back(t.known(i, c) ? std::to_string(t.at(i, c)) : ".");
            tab.add(row);
        }
        tab.print(os);
        std::vector<std::string> res;
        for (const auto& r : residual) res.push_back(r.get_str());
        os << "euler residual " << join(res, " ") << "\n";
    });
    return kOk;
}

int cmd_map_verify(const Global& g, const std::string& src_file, const std::string& tgt_file,
                   const std::string& map_file, const std::string& retraction_file,
                   const std::vector<std::string>& fixed) {
    Input si = read_input(src_file), ti = read_input(tgt_file), mi = read_input(map_file);
    Presentation src = load_presentation(si), tgt = load_presentation(ti);
    MorphismSpec f = parse_morphism(mi.text, src, tgt, "map");
    const std::size_t d = std::max<std::size_t>(2, src.max_relation_degree());
    Manifest m{"map-verify", {si, ti, mi}, tgt.order().to_string(), d, "exact-rational"};
    auto tgt_gb = compute_gb(tgt, tgt.order(), std::max<std::size_t>(d, tgt.max_relation_degree()), gb_options(g));
    MorphismCheck mc = verify_morphism(f, tgt_gb);
    json j;
    j["source"] = src.name();
    j["target"] = tgt.name();
    j["homomorphism"] = mc.ok;
    if (!mc.ok) {
        j["failedRelation"] = src.relations()[*mc.relation].to_string();
        j["imageNormalForm"] = mc.image_normal_form->to_string();
    }
    std::optional<SplittingCheck> sc;
    if (!retraction_file.empty()) {
        Input ri = read_input(retraction_file);
        m.inputs.push_back(ri);
        MorphismSpec r = parse_morphism(ri.text, tgt, src, "retraction");
        auto src_gb = compute_gb(src, src.order(), std::max<std::size_t>(2, src.max_relation_degree()), gb_options(g));
        MorphismCheck rc = verify_morphism(r, src_gb);
        j["retractionHomomorphism"] = rc.ok;
        sc = verify_splitting(f, r, src_gb, fixed);
        j["splitting"] = sc->ok && rc.ok;
        if (!sc->ok) j["splittingFailure"] = {{"generator", *sc->generator}, {"image", sc->image->to_string()}};
        if (!rc.ok) j["retractionFailedRelation"] = tgt.relations()[*rc.relation].to_string();
        if (!rc.ok) sc->ok = false;
    }
    const bool ok = mc.ok && (!sc || sc->ok);
    emit(g, j, m, [&](std::ostream& os) {
        os << "map " << src.name() << " -> " << tgt.name() << "\n";
        os << "homomorphism " << (mc.ok ? "true" : "false") << "\n";
        if (!mc.ok)
            os << "  relation " << src.relations()[*mc.relation].to_string() << " maps to "
               << mc.image_normal_form->to_string() << "\n";
        if (sc) os << "splitting " << (j["splitting"].get<bool>() ? "true" : "false") << "\n";
    });
    return ok ? kOk : kNegative;
}

int cmd_closure(const Global& g, const std::string& ambient_file, const std::string& gens_file,
                const std::string& name) {
    Input ai = read_input(ambient_file), gi = read_input(gens_file);
    Presentation amb = load_presentation(ai);
    Manifest m{"closure", {ai, gi}, amb.order().to_string(), 2, "exact-rational"};
    auto gb = compute_gb(amb, amb.order(), std::max<std::size_t>(2, amb.max_relation_degree()), gb_options(g));
    std::vector<NCPolynomial> subgens;
    std::vector<std::string> names;
    std::istringstream ss(gi.text);
    std::size_t number = 0;
    for (std::string line; std::getline(ss, line);) {
        ++number;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string expr = line;
        if (auto eq = line.find('='); eq != std::string::npos) {
            std::string nm = line.substr(0, eq);
            nm.erase(0, nm.find_first_not_of(" \t"));
            nm.erase(nm.find_last_not_of(" \t") + 1);
            names.push_back(nm);
            expr = line.substr(eq + 1);
        }
        try {
            subgens.push_back(parse_expression(expr, amb.order()));
        } catch (const ParseError& e) {
            throw ParseError(e.message(), number, e.column());
        }
    }
    if (!names.empty() && names.size() != subgens.size()) throw Error("either name every subgenerator or none");
    Presentation c = quadratic_closure_subalgebra(gb, subgens, names, name);
    if (!g.json) {
        std::cout << c.to_text();
        return kOk;
    }
    json j;
    j["ambient"] = amb.name();
    j["algebra"] = c.name();
    j["generators"] = c.alphabet().names();
    j["relationCount"] = c.relations().size();
    j["text"] = c.to_text();
    emit(g, j, m, nullptr);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finitely presented graded algebras over Q"};
    app.set_version_flag("--version", NCALG_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--json", g.json, "Emit JSON instead of a table");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--progress", g.progress, "Report progress on stderr");

    std::string file, order, name;
    std::size_t degree = 0;
    int n = 0;
    bool flag = false;

    auto* fam = app.add_subcommand("family", "Print a built-in presentation");
    fam->add_option("name", name, "mccool, ug, ugmodh or ugmodh-dual")->required();
    fam->add_option("--n", n, "Rank for mccool and ug");
    fam->add_flag("--substituted", flag, "ug only: rewrite in column-sum generators");

    auto* hil = app.add_subcommand("hilbert", "Hilbert series through a degree");
    hil->add_option("file", file, "Presentation file, '-' or family:NAME[:N]")->required();
    hil->add_option("--max-degree", degree, "Highest degree (>= 2)")->required();
    hil->add_option("--order", order, "deglex:g1>g2>... or deglex:default");
    hil->add_flag("--oracle", flag, "Also count by brute-force linear algebra");

    auto* kos = app.add_subcommand("koszul", "Numerical Koszul test against the quadratic dual");
    kos->add_option("file", file)->required();
    kos->add_option("--max-degree", degree)->required();
    kos->add_option("--order", order);

    auto* gbc = app.add_subcommand("gb", "Truncated Groebner basis");
    gbc->add_option("file", file)->required();
    gbc->add_option("--max-degree", degree)->required();
    gbc->add_option("--order", order);

    auto* dua = app.add_subcommand("dual", "Quadratic dual presentation");
    dua->add_option("file", file)->required();

    std::size_t samples = 0;
    std::uint64_t seed = 0x6e63616c67ULL;
    auto* pbw = app.add_subcommand("pbw", "Check whether the relations are a quadratic Groebner basis");
    pbw->add_option("file", file)->required();
    pbw->add_option("--order", order);
    pbw->add_option("--sample-orders", samples, "Also try this many random precedences");
    pbw->add_option("--seed", seed);

    std::size_t max_i = 3, recheck = 0;
    bool exact = false, blocks = false;
    auto* bet = app.add_subcommand("betti", "Graded Betti numbers dim Tor_{i,j}");
    bet->add_option("file", file)->required();
    bet->add_option("--max-i", max_i)->check(CLI::Range(0, 3));
    bet->add_option("--max-j", degree)->required();
    auto* ex = bet->add_flag("--exact", exact, "Rational arithmetic throughout");
    bet->add_flag("--prime", "Two-prime modular arithmetic (default)")->excludes(ex);
    bet->add_option("--seed", seed, "Seed for the prime choice");
    bet->add_option("--exact-recheck", recheck, "Recompute degrees <= K exactly");
    bet->add_flag("--blocks", blocks, "Include per-block statistics");

    std::string tgt, map, retraction;
    std::vector<std::string> fixed;
    auto* mv = app.add_subcommand("map-verify", "Check that a generator map respects the relations");
    mv->add_option("source", file)->required();
    mv->add_option("target", tgt)->required();
    mv->add_option("map", map)->required();
    mv->add_option("--retraction", retraction, "Map target -> source; also check it splits the map");
    mv->add_option("--fixed", fixed, "Generators the splitting must fix (default: all)");

    std::string gens;
    name = "closure";
    auto* clo = app.add_subcommand("closure", "Quadratic closure of the subalgebra on degree-1 elements");
    clo->add_option("ambient", file)->required();
    clo->add_option("generators", gens, "Lines 'expr' or 'name = expr'")->required();
    clo->add_option("--name", name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*fam) return cmd_family(g, name, n, flag);
        if (*hil) return cmd_hilbert(g, file, degree, order, flag);
        if (*kos) return cmd_koszul(g, file, degree, order);
        if (*gbc) return cmd_gb(g, file, degree, order);
        if (*dua) return cmd_dual(g, file);
        if (*pbw) return cmd_pbw(g, file, order, samples, seed);
        if (*bet) return cmd_betti(g, file, max_i, degree, exact, seed, recheck, blocks);
        if (*mv) return cmd_map_verify(g, file, tgt, map, retraction, fixed);
        if (*clo) return cmd_closure(g, file, gens, name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
