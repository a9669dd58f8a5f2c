// Command line front end for the q-Brauer engine.
//
// Exit codes: 0 success, 1 verification failure or internal error,
// 2 invalid configuration, 3 rewrite step budget exhausted.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbr/cellular.hpp"
#include "qbr/errors.hpp"
#include "qbr/suites.hpp"

using namespace qbr;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string command;
    int n = 3;
    std::string version = "two-param";
    std::string field = "generic";
    std::string q, r;
    std::optional<int> k;
    std::optional<std::string> lambda;
    std::string kind = "normal";
    std::string grid;
    std::string suite = "all";
    std::string output = "text";
    std::string cache;
    size_t samples = 1000;
    bool allow_large = false;
    bool timing = false;
};

struct Outcome {
    json result;
    std::string text;
    std::vector<std::vector<std::string>> csv;
    bool cache_hit = false;
    int code = 0;
};

struct VersionChoice {
    Version v = Version::TwoParam;
    long N = 0;
};

VersionChoice parse_version(const std::string& s) {
    if (s == "two-param") return {Version::TwoParam, 0};
    if (s == "oneparam" || s == "one-param") return {Version::OneParam, 0};
    if (s.rfind("N=", 0) == 0) {
        try {
            size_t used = 0;
            long N = std::stol(s.substr(2), &used);
            if (used == s.size() - 2) return {Version::NVersion, N};
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("unknown version '" + s + "' (expected two-param, oneparam or N=<int>)");
}

AlgebraSpec make_spec(const RunConfig& c, const Field& F, const std::string& q, const std::string& r) {
    VersionChoice vc = parse_version(c.version);
    if (F.kind == Field::Kind::Generic && q.empty() && r.empty()) return AlgebraSpec::generic(c.n, vc.v, vc.N);
    std::string qs = q.empty() && F.kind == Field::Kind::Generic ? "q" : q;
    std::string rs = r.empty() && F.kind == Field::Kind::Generic ? "r" : r;
    if (qs.empty()) throw ConfigError("--q is required over " + F.str());
    FieldElem fq = parse_elem(F, qs);
    if (vc.v == Version::NVersion) return AlgebraSpec::n_version(c.n, vc.N, fq);
    if (rs.empty()) throw ConfigError("--r is required over " + F.str());
    FieldElem fr = parse_elem(F, rs);
    return vc.v == Version::TwoParam ? AlgebraSpec::two_param(c.n, fq, fr) : AlgebraSpec::one_param(c.n, fq, fr);
}

void check_size(const RunConfig& c) {
    if (c.n < 2 || c.n > QBrAlgebra::kMaxN)
        throw ConfigError("n must lie in 2.." + std::to_string(QBrAlgebra::kMaxN));
    if (c.n > 4 && !c.allow_large) throw ConfigError("n > 4 needs --allow-large");
}

CellLabel parse_label(const RunConfig& c) {
    if (!c.k || !c.lambda) throw ConfigError("--k and --lambda are required");
    CellLabel lab{*c.k, parse_partition(*c.lambda)};
    if (*c.k < 0 || 2 * *c.k > c.n || size_of(lab.lam) != c.n - 2 * *c.k)
        throw ConfigError("label " + lab.str() + " is not in Lambda_" + std::to_string(c.n));
    return lab;
}

// Structure table from --cache or QBR_CACHE_DIR, if either is set.
std::unique_ptr<StructureTable> open_cache(const RunConfig& c, const QBrAlgebra& A, bool& hit) {
    std::string dir = c.cache;
    if (dir.empty())
        if (const char* env = std::getenv("QBR_CACHE_DIR")) dir = env;
    if (dir.empty()) return nullptr;
    auto T = std::make_unique<StructureTable>(A);
    hit = T->load_or_build(dir);
    return T;
}

std::string tab_str(const Tableau& t) { return t.rows.empty() ? "-" : t.str(); }

std::string cellular_str(const QBrAlgebra& A, const CellularIndex& ci) {
    const auto& tabs = A.hecke(ci.label.k).tableaux(ci.lam_idx);
    const auto& B = A.B(ci.label.k);
    return "x" + ci.label.str() + "[(" + tab_str(tabs[ci.s]) + ", " + B[ci.u].word_str() + ")(" +
           tab_str(tabs[ci.t]) + ", " + B[ci.v].word_str() + ")]";
}

Outcome cmd_basis(const RunConfig& c) {
    if (c.n < 2 || c.n > QBrAlgebra::kMaxN) throw ConfigError("n must lie in 2.." + std::to_string(QBrAlgebra::kMaxN));
    if (c.kind != "normal" && c.kind != "cellular") throw ConfigError("--kind must be normal or cellular");
    if (c.k && (*c.k < 0 || 2 * *c.k > c.n)) throw ConfigError("--k must lie in 0..n/2");
    Field F = Field::parse(c.field);
    QBrAlgebra A(make_spec(c, F, c.q, c.r));
    std::vector<std::string> items;
    if (c.kind == "normal") {
        for (size_t b = 0; b < A.dim(); ++b)
            if (!c.k || A.index(b).k == *c.k) items.push_back(A.index_str(b));
    } else {
        for (const auto& ci : A.cellular_basis())
            if (!c.k || ci.label.k == *c.k) items.push_back(cellular_str(A, ci));
    }
    Outcome o;
    o.result = {{"kind", c.kind}, {"count", items.size()}, {"elements", items}};
    std::ostringstream t;
    t << c.kind << " basis, n = " << c.n;
    if (c.k) t << ", k = " << *c.k;
    t << ": " << items.size() << " elements\n";
    for (const auto& s : items) t << s << "\n";
    o.text = t.str();
    o.csv.push_back({"index", "element"});
    for (size_t i = 0; i < items.size(); ++i) o.csv.push_back({std::to_string(i), items[i]});
    return o;
}

Outcome cmd_gram(const RunConfig& c) {
    if (c.n < 2 || c.n > QBrAlgebra::kMaxN) throw ConfigError("n must lie in 2.." + std::to_string(QBrAlgebra::kMaxN));
    CellLabel lab = parse_label(c);
    Field F = Field::parse(c.field);
    QBrAlgebra A(make_spec(c, F, c.q, c.r));
    Outcome o;
    auto T = open_cache(c, A, o.cache_hit);
    CellModules C(A, T.get());
    Matrix g = C.gram(lab);
    FieldElem det = gram_det(g, F);
    size_t rk = rank(g);
    std::vector<std::string> reps;
    for (const auto& [t, v] : C.cell_basis(lab)) reps.push_back(C.representative_str(lab, t, v));
    json rows = json::array();
    for (const auto& row : g) {
        json jr = json::array();
        for (const auto& x : row) jr.push_back(x.str());
        rows.push_back(jr);
    }
    o.result = {{"label", lab.str()}, {"dim_C", g.size()},  {"basis", reps},   {"matrix", rows},
                {"determinant", det.str()}, {"rank", rk}, {"dim_D", rk}};
    std::ostringstream t;
    t << "cell module C" << lab.str() << ", n = " << c.n << ", " << A.spec().describe() << "\n";
    t << "basis (" << reps.size() << "):\n";
    for (size_t i = 0; i < reps.size(); ++i) t << "  v" << i + 1 << " = " << reps[i] << "\n";
    t << "gram matrix:\n";
    for (size_t i = 0; i < g.size(); ++i) {
        t << "  [";
        for (size_t j = 0; j < g[i].size(); ++j) t << (j ? ", " : "") << g[i][j].str();
        t << "]\n";
    }
    t << "determinant: " << det.str() << "\nrank: " << rk << "\ndim D: " << rk << "\n";
    o.text = t.str();
    o.csv.push_back({"i", "j", "entry"});
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) o.csv.push_back({std::to_string(i + 1), std::to_string(j + 1), g[i][j].str()});
    return o;
}

std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }
json opt_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

struct GridRow {
    std::string r, q;
    bool excluded = false;
    std::string reason;
    SemisimpleResult res;
};

Outcome cmd_semisimple(const RunConfig& c) {
    check_size(c);
    Field F = Field::parse(c.field);
    Outcome o;
    if (c.grid.empty()) {
        QBrAlgebra A(make_spec(c, F, c.q, c.r));
        auto T = open_cache(c, A, o.cache_hit);
        CellModules C(A, T.get());
        SemisimpleResult res = is_semisimple(C, c.allow_large);
        json labels = json::array();
        std::ostringstream t;
        t << A.spec().describe() << ", n = " << c.n << "\n";
        for (const auto& lab : cell_labels(c.n)) {
            RadicalRank rr = C.radical_rank(lab);
            labels.push_back({{"label", lab.str()}, {"dim_C", rr.dim_C}, {"dim_D", rr.rank}});
            t << "  C" << lab.str() << ": dim " << rr.dim_C << ", dim D " << rr.rank << "\n";
        }
        std::string witness = res.witness ? res.witness->str() : "";
        o.result = {{"semisimple", res.semisimple},
                    {"witness_label", res.witness ? json(witness) : json(nullptr)},
                    {"closed_form", opt_json(res.closed_form)},
                    {"closed_form_agrees", opt_json(res.closed_form_agrees)},
                    {"e", quantum_char_str(quantum_char(A.spec().Q))},
                    {"labels", labels}};
        t << (res.semisimple ? "semisimple" : "not semisimple");
        if (res.witness) t << " (degenerate form on C" << witness << ")";
        t << "\n";
        if (res.closed_form) t << "closed form: " << (*res.closed_form ? "semisimple" : "not semisimple") << "\n";
        o.text = t.str();
        o.csv.push_back({"r", "q", "semisimple", "witness_label", "closed_form_agrees"});
        o.csv.push_back({c.r, c.q, res.semisimple ? "true" : "false", witness, opt_bool(res.closed_form_agrees)});
        return o;
    }

    if (c.grid != "all") throw ConfigError("--grid only accepts 'all'");
    if (F.kind != Field::Kind::Prime) throw ConfigError("--grid needs a prime field fp:<p>");
    bool nver = parse_version(c.version).v == Version::NVersion;
    std::vector<GridRow> rows;
    for (long rv = nver ? 0 : 0; rv < (nver ? 1 : F.p); ++rv)
        for (long qv = 0; qv < F.p; ++qv) rows.push_back({nver ? "" : std::to_string(rv), std::to_string(qv)});

    // Points are independent; each worker builds its own algebra and writes
    // only its own row, so the output order never depends on scheduling.
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto work = [&] {
        for (size_t i; (i = next++) < rows.size();) {
            GridRow& row = rows[i];
            try {
                AlgebraSpec spec = make_spec(c, F, row.q, nver ? "" : row.r);
                QBrAlgebra A(spec);
                row.res = is_semisimple(CellModules(A), c.allow_large);
            } catch (const ConfigError& e) {
                row.excluded = true;
                row.reason = e.what();
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    json jrows = json::array();
    std::ostringstream t;
    size_t bad = 0, excluded = 0;
    o.csv.push_back({"r", "q", "semisimple", "witness_label", "closed_form_agrees"});
    for (const auto& row : rows) {
        if (row.excluded) {
            ++excluded;
            jrows.push_back({{"r", row.r}, {"q", row.q}, {"semisimple", "excluded"}, {"reason", row.reason}});
            o.csv.push_back({row.r, row.q, "excluded", "", ""});
            continue;
        }
        std::string witness = row.res.witness ? row.res.witness->str() : "";
        if (!row.res.semisimple) {
            ++bad;
            t << "not semisimple at r = " << (row.r.empty() ? "-" : row.r) << ", q = " << row.q << " (C" << witness
              << ")\n";
        }
        jrows.push_back({{"r", row.r},
                         {"q", row.q},
                         {"semisimple", row.res.semisimple},
                         {"witness_label", row.res.witness ? json(witness) : json(nullptr)},
                         {"closed_form_agrees", opt_json(row.res.closed_form_agrees)}});
        o.csv.push_back({row.r, row.q, row.res.semisimple ? "true" : "false", witness,
                         opt_bool(row.res.closed_form_agrees)});
    }
    o.result = {{"points", rows.size()}, {"excluded", excluded}, {"non_semisimple", bad}, {"rows", jrows}};
    std::ostringstream head;
    head << c.version << " over " << F.str() << ", n = " << c.n << ": " << rows.size() << " points, " << excluded
         << " excluded, " << bad << " not semisimple\n";
    o.text = head.str() + t.str();
    return o;
}

Outcome cmd_verify(const RunConfig& c) {
    check_size(c);
    Field F = Field::parse(c.field);
    AlgebraSpec spec = make_spec(c, F, c.q, c.r);
    std::vector<std::string> names;
    if (c.suite == "all") {
        names = suite_names();
    } else {
        if (std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
            throw ConfigError("unknown suite '" + c.suite + "'");
        names = {c.suite};
    }
    std::unique_ptr<QBrAlgebra> A;
    auto alg = [&]() -> const QBrAlgebra& {
        if (!A) A = std::make_unique<QBrAlgebra>(spec);
        return *A;
    };
    std::vector<SuiteResult> results;
    for (const auto& name : names) {
        if (name == "dimension") results.push_back(suite_dimension(alg()));
        if (name == "relations") results.push_back(suite_relations(alg()));
        if (name == "associativity") results.push_back(suite_associativity(alg(), c.samples));
        if (name == "involution") results.push_back(suite_involution(alg(), c.samples));
        if (name == "cellularity") results.push_back(suite_cellularity(alg()));
        if (name == "murphy") results.push_back(suite_murphy(alg()));
        if (name == "brauer-oracle") {
            if (c.n > 4) throw ConfigError("the Brauer oracle runs for n <= 4");
            long N = spec.version == Version::NVersion ? spec.N : 3;
            results.push_back(suite_brauer_oracle(c.n, N));
        }
    }
    Outcome o;
    json suites = json::array();
    std::ostringstream t;
    o.csv.push_back({"suite", "status", "checks", "detail"});
    bool all_ok = true;
    for (const auto& r : results) {
        all_ok = all_ok && r.ok;
        suites.push_back({{"suite", r.name}, {"ok", r.ok}, {"checks", r.checks}, {"detail", r.detail},
                          {"failures", r.failures}});
        t << r.name << ": " << (r.ok ? "PASS" : "FAIL") << " (" << r.checks << " checks)";
        if (!r.detail.empty()) t << " " << r.detail;
        t << "\n";
        for (const auto& f : r.failures) t << "  counterexample: " << f << "\n";
        o.csv.push_back({r.name, r.ok ? "PASS" : "FAIL", std::to_string(r.checks), r.detail});
    }
    o.result = {{"ok", all_ok}, {"suites", suites}};
    o.text = t.str();
    o.code = all_ok ? 0 : 1;
    return o;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

json config_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"n", c.n}, {"version", c.version}, {"field", c.field}};
    j["q"] = c.q.empty() ? json(nullptr) : json(c.q);
    j["r"] = c.r.empty() ? json(nullptr) : json(c.r);
    if (c.command == "basis") j["kind"] = c.kind;
    if (c.k) j["k"] = *c.k;
    if (c.lambda) j["lambda"] = *c.lambda;
    if (!c.grid.empty()) j["grid"] = c.grid;
    if (c.command == "verify") j["suite"] = c.suite;
    j["cache"] = c.cache.empty() ? json(nullptr) : json(c.cache);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig c;
    CLI::App app{"Exact computations in q-Brauer algebras"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", c.n, "number of strands (2..5)");
        sub->add_option("--version", c.version, "two-param, oneparam or N=<int>");
        sub->add_option("--field", c.field, "generic, fp:<p> or cyclo:<m>");
        sub->add_option("--q", c.q, "image of q");
        sub->add_option("--r", c.r, "image of r");
        sub->add_option("--output", c.output, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--cache", c.cache, "structure constant cache directory");
        sub->add_flag("--allow-large", c.allow_large, "permit n > 4 for semisimple and verify");
        sub->add_flag("--timing", c.timing, "report wall time in JSON output");
    };
    auto* basis = app.add_subcommand("basis", "list the normal or cellular basis");
    common(basis);
    basis->add_option("--kind", c.kind, "normal or cellular");
    basis->add_option("--k", c.k, "restrict to level k");

    auto* gram = app.add_subcommand("gram", "Gram matrix of a cell module");
    common(gram);
    gram->add_option("--k", c.k, "number of horizontal pairs");
    gram->add_option("--lambda", c.lambda, "partition as a comma list, \"\" for the empty one");

    auto* semi = app.add_subcommand("semisimple", "semisimplicity verdict or grid table");
    common(semi);
    semi->add_option("--grid", c.grid, "'all' sweeps every (r,q) over fp:<p>");

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    common(verify);
    verify->add_option("--suite", c.suite, "suite name or all");
    verify->add_option("--samples", c.samples, "random samples for associativity and involution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    for (auto* sub : {basis, gram, semi, verify})
        if (sub->parsed()) c.command = sub->get_name();

    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        if (c.command == "basis") o = cmd_basis(c);
        if (c.command == "gram") o = cmd_gram(c);
        if (c.command == "semisimple") o = cmd_semisimple(c);
        if (c.command == "verify") o = cmd_verify(c);
    } catch (const RewriteBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CacheVersionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream out;
    if (c.output == "json") {
        json j = {{"config", config_json(c)},
                  {"result", o.result},
                  {"timing", c.timing ? json{{"seconds", secs}} : json(nullptr)},
                  {"cache_hit", o.cache_hit}};
        out << j.dump(2) << "\n";
    } else if (c.output == "csv") {
        for (const auto& row : o.csv) {
            for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << "\n";
        }
    } else {
        out << o.text;
    }
    std::cout << out.str();
    return o.code;
}
