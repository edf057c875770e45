// btu: command-line surface over the library.  One subcommand per
// operation family; --json switches every command to machine-readable
// output; matrices and permutation tables are read from stdin in the
// library text formats.  Exit codes: 0 ok, 2 usage, 3 domain error,
// 4 resource limit, 5 not found, 6 reproduce check failed.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <btu/btu.hpp>
#include <btu/io.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitResource = 4;
constexpr int kExitNotFound = 5;
constexpr int kExitReproduceFail = 6;

struct GlobalOpts {
    bool json = false;
    int max_m = 7;
    int timeout_secs = 60;
    int threads = 0;
    std::uint64_t seed = 0;

    btu::EnumerationLimits limits() const {
        btu::EnumerationLimits lim;
        lim.max_m = max_m;
        lim.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_secs) * 1000);
        lim.threads = threads;
        return lim;
    }
};

std::string rational_str(const btu::Rational& q) {
    btu::BigInt num = boost::multiprecision::numerator(q);
    btu::BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string read_all_stdin() {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
}

// Permutations arrive one per line; blank lines are separators.
std::vector<btu::Permutation> read_permutation_lines(std::istream& is) {
    std::vector<btu::Permutation> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(btu::Permutation::parse(line));
    }
    return out;
}

// "symmetric:5" | "cyclic:5" | "dihedral:5" | "psi:(4,2)"
btu::CycleIndexPoly parse_poly_spec(const std::string& spec, const GlobalOpts& opts) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw btu::DomainError("poly spec '" + spec + "': expected family:argument, e.g. dihedral:5");
    std::string family = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (family == "psi") return btu::z_automorphism_of_psi(btu::Partition::parse(arg), opts.max_m);
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(arg, &used);
        if (used != arg.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw btu::DomainError("poly spec '" + spec + "': argument must be an integer");
    }
    if (family == "symmetric") return btu::z_symmetric(n);
    if (family == "cyclic") return btu::z_cyclic(n);
    if (family == "dihedral") return btu::z_dihedral(n);
    throw btu::DomainError("poly spec '" + spec +
                           "': unknown family (use symmetric, cyclic, dihedral, or psi)");
}

// Cycle types admit fixed points, so "(2,1)" is parsed here rather than as
// a unit partition (whose parts must be >= 2).
btu::CycleType parse_cycle_type(const std::string& text) {
    std::string body = text;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    std::vector<int> parts;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::istringstream ts(tok);
        int q = 0;
        if (!(ts >> q) || !(ts >> std::ws).eof() || q < 1)
            throw btu::DomainError("cycle type '" + text + "': parts must be integers >= 1");
        parts.push_back(q);
    }
    if (parts.empty()) throw btu::DomainError("cycle type '" + text + "': needs at least one part");
    btu::CycleType t;
    t.j.assign(static_cast<std::size_t>(*std::max_element(parts.begin(), parts.end())), 0);
    for (int q : parts) ++t.j[static_cast<std::size_t>(q - 1)];
    return t;
}

void emit_json(const btu::Json& j) { std::cout << j.dump() << '\n'; }

// ---------------------------------------------------------------------------
// reproduce: recompute every built-in reference value and report PASS/FAIL
// rows, plus an appendix for the two documented divergences (the m=9
// reference partition list and the multi-part closed-form counts).

// Reference forms for m=6, degree 2, as printed in the source tables.
// The first two are relabelings of one another (a single 12-cycle); the
// third splits into two 6-cycles and is distinct from both.
const char* kRefTwelveCycleA =
    "6 2\n"
    "0 0 0 0 1 1\n"
    "1 0 0 0 0 1\n"
    "1 1 0 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 1 1 0\n"
    "0 1 1 0 0 0\n";
const char* kRefTwelveCycleB =
    "6 2\n"
    "1 0 0 0 0 1\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 1 1 0\n"
    "0 0 0 0 1 1\n";
const char* kRefTwoSixCycles =
    "6 2\n"
    "1 0 1 0 0 0\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 0 1 0 1\n"
    "0 0 0 1 1 0\n"
    "0 0 0 0 1 1\n";
const char* kRefEightFourCycles =
    "6 2\n"
    "1 0 0 1 0 0\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 0 1 1\n"
    "0 0 0 0 1 1\n";
const char* kRefThreeFourCycles =
    "6 2\n"
    "1 1 0 0 0 0\n"
    "1 1 0 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 0 1 1\n"
    "0 0 0 0 1 1\n";

struct ReproRow {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct ReproSection {
    std::string name;
    std::vector<ReproRow> rows;
    std::vector<std::string> notes;  // informational, never counted as checks
};

void add_row(ReproSection& sec, std::string name, std::string expected, std::string computed) {
    bool pass = expected == computed;
    sec.rows.push_back({std::move(name), std::move(expected), std::move(computed), pass});
}

std::string partition_list_str(const std::vector<btu::Partition>& list) {
    std::ostringstream os;
    for (std::size_t i = 0; i < list.size(); ++i) os << (i ? " " : "") << list[i].to_string();
    return os.str();
}

ReproSection repro_e_table(const GlobalOpts& opts) {
    ReproSection sec{"e-table", {}, {}};
    struct Ref { int m, r; const char* count; };
    const Ref refs[] = {{4, 2, "2"}, {5, 2, "2"}, {6, 2, "4"}, {6, 3, "7"}, {6, 4, "4"}};
    for (const Ref& ref : refs) {
        std::string name = "E(" + std::to_string(ref.m) + "," + std::to_string(ref.r) + ")";
        add_row(sec, name, ref.count, btu::count_nonisomorphic(ref.m, ref.r, opts.limits()).str());
    }
    return sec;
}

ReproSection repro_p2_table(const GlobalOpts&) {
    ReproSection sec{"p2-table", {}, {}};
    const std::map<int, std::string> ref_lists = {
        {4, "(4) (2,2)"},
        {5, "(5) (3,2)"},
        {6, "(6) (4,2) (3,3) (2,2,2)"},
        {7, "(7) (5,2) (4,3) (3,2,2)"},
        {8, "(8) (6,2) (5,3) (4,4) (4,2,2) (3,3,2) (2,2,2,2)"},
    };
    for (const auto& [m, expected] : ref_lists)
        add_row(sec, "p2(" + std::to_string(m) + ") list", expected,
                partition_list_str(btu::enumerate_p2(m)));
    bool identity_holds = true;
    for (int m = 2; m <= 30; ++m)
        if (btu::BigInt(btu::enumerate_p2(m).size()) != btu::count_p2(m)) identity_holds = false;
    add_row(sec, "list length == p(m) - p(m-1), m <= 30", "holds",
            identity_holds ? "holds" : "violated");
    add_row(sec, "p(10)", "42", btu::count_unrestricted(10).str());
    return sec;
}

ReproSection repro_forms(const GlobalOpts&) {
    ReproSection sec{"forms", {}, {}};
    btu::Btu a = btu::Btu::from_text(kRefTwelveCycleA);
    btu::Btu b = btu::Btu::from_text(kRefTwelveCycleB);
    const std::vector<std::pair<btu::Partition, btu::Btu>> printed = {
        {btu::Partition({6}), b},
        {btu::Partition({4, 2}), btu::Btu::from_text(kRefEightFourCycles)},
        {btu::Partition({3, 3}), btu::Btu::from_text(kRefTwoSixCycles)},
        {btu::Partition({2, 2, 2}), btu::Btu::from_text(kRefThreeFourCycles)},
    };
    add_row(sec, "twelve-cycle pair isomorphic", "yes", btu::is_isomorphic(a, b) ? "yes" : "no");
    add_row(sec, "twelve-cycle vs two-six-cycle distinct", "yes",
            btu::is_isomorphic(a, printed[2].second) ? "no" : "yes");
    for (const auto& [beta, ref] : printed)
        add_row(sec, "psi(" + beta.to_string() + ") matches printed form up to labels", "yes",
                btu::is_isomorphic(btu::psi(beta), ref) ? "yes" : "no");
    bool pairwise_distinct = true;
    for (std::size_t i = 0; i < printed.size(); ++i)
        for (std::size_t j = i + 1; j < printed.size(); ++j)
            if (btu::is_isomorphic(printed[i].second, printed[j].second)) pairwise_distinct = false;
    add_row(sec, "four m=6 forms pairwise distinct", "yes", pairwise_distinct ? "yes" : "no");
    return sec;
}

ReproSection repro_girth(const GlobalOpts&) {
    ReproSection sec{"girth", {}, {}};
    bool laws_hold = true;
    for (int m = 2; m <= 10 && laws_hold; ++m) {
        for (const btu::Partition& beta : btu::enumerate_p2(m)) {
            btu::Btu g = btu::psi(beta);
            if (btu::girth(g) != std::optional<int>(2 * beta.parts().back())) laws_hold = false;
            std::vector<int> expected = btu::known_cycle_lengths(beta);
            std::sort(expected.begin(), expected.end());
            std::vector<int> found;
            for (const btu::Cycle& c : btu::enumerate_cycles(g, 2 * m))
                found.push_back(static_cast<int>(c.size()));
            std::sort(found.begin(), found.end());
            if (found != expected) laws_hold = false;
        }
    }
    add_row(sec, "girth(psi(beta)) == 2 min part and cycle list == {2q}, m <= 10", "holds",
            laws_hold ? "holds" : "violated");
    bool cages_hold = true;
    for (int g = 4; g <= 16; g += 2)
        if (btu::girth(btu::cage(g)) != std::optional<int>(g)) cages_hold = false;
    add_row(sec, "girth(cage(g)) == g, even g <= 16", "holds", cages_hold ? "holds" : "violated");
    return sec;
}

ReproSection repro_rank(const GlobalOpts& opts) {
    ReproSection sec{"rank", {}, {}};
    bool drop_holds = true;
    for (int m = 2; m <= 12; ++m)
        for (const btu::Partition& beta : btu::enumerate_p2(m))
            if (btu::gf2_rank(btu::psi(beta)) != m - static_cast<int>(beta.parts().size()))
                drop_holds = false;
    add_row(sec, "rank(psi(beta)) == m - #parts, m <= 12", "holds",
            drop_holds ? "holds" : "violated");
    bool singular_holds = true;
    for (int m = 2; m <= 6; ++m)
        for (int r = 2; r <= m; r += 2)
            for (const btu::Btu& g : btu::enumerate_nonisomorphic(m, r, opts.limits()))
                if (btu::gf2_rank(g) >= m) singular_holds = false;
    add_row(sec, "every even-degree class is singular, m <= 6", "holds",
            singular_holds ? "holds" : "violated");
    return sec;
}

ReproSection repro_beta(const GlobalOpts&) {
    ReproSection sec{"beta", {}, {}};
    bool agree = true;
    for (int m = 2; m <= 5 && agree; ++m) {
        std::vector<btu::Permutation> all;
        btu::for_each_compatible(m, {}, [&](const btu::Permutation& p) {
            all.push_back(p);
            return true;
        });
        for (const btu::Permutation& a : all)
            for (const btu::Permutation& b : all) {
                if (!btu::is_compatible(a, b)) continue;
                if (btu::beta_of(a, b) != btu::beta_of_traversal(a, b)) agree = false;
            }
    }
    add_row(sec, "traversal beta == cycle type of b after inverse(a), all pairs m <= 5", "agree",
            agree ? "agree" : "differ");
    return sec;
}

ReproSection repro_compat(const GlobalOpts&) {
    ReproSection sec{"compat", {}, {}};
    const std::map<int, std::string> derangements = {
        {4, "9"}, {5, "44"}, {6, "265"}, {7, "1854"}};
    for (const auto& [m, expected] : derangements) {
        std::vector<btu::Permutation> id(1, btu::Permutation::identity(m));
        add_row(sec, "compatible with identity, m=" + std::to_string(m), expected,
                std::to_string(btu::enumerate_compatible(id, m).size()));
    }
    return sec;
}

ReproSection repro_cycle_index(const GlobalOpts&) {
    ReproSection sec{"cycle-index", {}, {}};
    add_row(sec, "cap(Z(D5), Z(D5))", "4",
            rational_str(btu::cap({btu::z_dihedral(5), btu::z_dihedral(5)})));
    add_row(sec, "cap(Z(S3), Z(S3))", "1",
            rational_str(btu::cap({btu::z_symmetric(3), btu::z_symmetric(3)})));
    add_row(sec, "cap(Z(D3), Z(D3))", "1",
            rational_str(btu::cap({btu::z_dihedral(3), btu::z_dihedral(3)})));
    add_row(sec, "Z(S3)", "1/6 s1^3 + 1/2 s1 s2 + 1/3 s3", btu::z_symmetric(3).to_string());
    add_row(sec, "Z(C3)", "1/3 s1^3 + 2/3 s3", btu::z_cyclic(3).to_string());
    add_row(sec, "Z(D5)", "1/10 s1^5 + 1/2 s1 s2^2 + 2/5 s5", btu::z_dihedral(5).to_string());
    return sec;
}

ReproSection repro_divergence(const GlobalOpts&) {
    ReproSection sec{"divergence", {}, {}};
    sec.notes.push_back(
        "reference m=9 partition list repeats (6,3) and omits (5,2,2); computed list: " +
        partition_list_str(btu::enumerate_p2(9)));
    sec.notes.push_back(
        "closed-form pair counts diverge from exhaustive enumeration on multi-part "
        "partitions; both values per row:");
    bool corollary_holds = true;
    for (int m = 3; m <= 6; ++m) {
        for (const btu::Partition& beta : btu::enumerate_p2(m)) {
            btu::Rational formula = btu::f_beta_closed_form(m, 2, beta);
            std::size_t actual =
                btu::enumerate_compatible_with_partition(btu::Permutation::identity(m), beta)
                    .size();
            bool agree = formula == btu::Rational(actual);
            std::ostringstream os;
            os << "m=" << m << " " << beta.to_string() << ": formula " << rational_str(formula)
               << ", exhaustive " << actual << (agree ? "" : "  [differs]");
            sec.notes.push_back(os.str());
            if (beta.parts().size() == 1 && !agree) corollary_holds = false;
        }
    }
    add_row(sec, "single-part case matches (m-1)!, m <= 6", "holds",
            corollary_holds ? "holds" : "violated");
    return sec;
}

const std::vector<std::string> kReproSections = {
    "e-table", "p2-table", "forms", "girth", "rank",
    "beta",    "compat",   "cycle-index", "divergence"};

int run_reproduce(const GlobalOpts& opts, const std::string& only) {
    std::vector<ReproSection> sections;
    auto want = [&](const std::string& name) { return only.empty() || only == name; };
    if (want("e-table")) sections.push_back(repro_e_table(opts));
    if (want("p2-table")) sections.push_back(repro_p2_table(opts));
    if (want("forms")) sections.push_back(repro_forms(opts));
    if (want("girth")) sections.push_back(repro_girth(opts));
    if (want("rank")) sections.push_back(repro_rank(opts));
    if (want("beta")) sections.push_back(repro_beta(opts));
    if (want("compat")) sections.push_back(repro_compat(opts));
    if (want("cycle-index")) sections.push_back(repro_cycle_index(opts));
    if (want("divergence")) sections.push_back(repro_divergence(opts));

    int checks = 0, failed = 0;
    for (const ReproSection& sec : sections)
        for (const ReproRow& row : sec.rows) {
            ++checks;
            if (!row.pass) ++failed;
        }

    if (opts.json) {
        btu::Json jsecs = btu::Json::array();
        for (const ReproSection& sec : sections) {
            btu::Json jrows = btu::Json::array();
            for (const ReproRow& row : sec.rows)
                jrows.push_back({{"name", row.name},
                                 {"expected", row.expected},
                                 {"computed", row.computed},
                                 {"pass", row.pass}});
            jsecs.push_back({{"name", sec.name}, {"rows", jrows}, {"notes", sec.notes}});
        }
        emit_json({{"sections", jsecs}, {"checks", checks}, {"failed", failed}});
    } else {
        for (const ReproSection& sec : sections) {
            std::cout << "== " << sec.name << " ==\n";
            for (const ReproRow& row : sec.rows)
                std::cout << (row.pass ? "PASS" : "FAIL") << "  " << row.name << "  expected "
                          << row.expected << "  computed " << row.computed << '\n';
            for (const std::string& note : sec.notes) std::cout << "  " << note << '\n';
        }
        std::cout << "== summary ==\n"
                  << checks << " checks, " << (checks - failed) << " passed, " << failed
                  << " failed\n";
    }
    return failed == 0 ? kExitOk : kExitReproduceFail;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    GlobalOpts opts;

    CLI::App app{"balanced Tanner unit toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", opts.json, "emit JSON instead of text");
    app.add_option("--max-m", opts.max_m, "size guard for brute-force searches")
        ->capture_default_str();
    app.add_option("--timeout-secs", opts.timeout_secs, "wall-clock budget for enumerations")
        ->capture_default_str();
    app.add_option("--threads", opts.threads, "worker cap, 0 = library default")
        ->envname("BTU_THREADS")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "seed for seeded searches")->capture_default_str();

    // Each subcommand parks its work here; dispatch happens after parsing
    // so every library error funnels through one exit-code mapping.
    std::function<int()> action;

    // --- partitions ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("p2", "list the partitions of m with all parts >= 2");
        auto m = std::make_shared<int>(0);
        auto count_only = std::make_shared<bool>(false);
        cmd->add_option("--m", *m, "integer to partition")->required();
        cmd->add_flag("--count", *count_only, "print only the number of partitions");
        cmd->callback([&, m, count_only] {
            action = [&, m, count_only] {
                if (*count_only) {
                    if (opts.json)
                        emit_json({{"count", btu::count_p2(*m).str()}});
                    else
                        std::cout << btu::count_p2(*m).str() << '\n';
                    return kExitOk;
                }
                auto list = btu::enumerate_p2(*m);
                if (opts.json) {
                    btu::Json j = btu::Json::array();
                    for (const auto& beta : list) j.push_back(btu::json_of(beta));
                    emit_json(j);
                } else {
                    for (const auto& beta : list) std::cout << beta.to_string() << '\n';
                }
                return kExitOk;
            };
        });
    }

    // --- matrix constructions and queries -----------------------------------
    {
        auto* cmd = app.add_subcommand("psi", "build the canonical degree-2 unit of a partition");
        auto beta = std::make_shared<std::string>();
        cmd->add_option("--beta", *beta, "partition, e.g. (4,2)")->required();
        cmd->callback([&, beta] {
            action = [&, beta] {
                btu::Btu g = btu::psi(btu::Partition::parse(*beta));
                if (opts.json)
                    emit_json(btu::json_of(g));
                else
                    std::cout << g.to_text();
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("girth", "shortest cycle length of a unit read from stdin");
        cmd->callback([&] {
            action = [&] {
                btu::Btu g = btu::Btu::from_stream(std::cin);
                std::optional<int> girth = btu::girth(g);
                if (opts.json)
                    emit_json({{"girth", girth ? btu::Json(*girth) : btu::Json(nullptr)}});
                else
                    std::cout << (girth ? std::to_string(*girth) : std::string("none")) << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("rank", "binary rank of a unit read from stdin");
        cmd->callback([&] {
            action = [&] {
                int rank = btu::gf2_rank(btu::Btu::from_stream(std::cin));
                if (opts.json)
                    emit_json({{"rank", rank}});
                else
                    std::cout << rank << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("complement", "bit-flip complement of a unit from stdin");
        cmd->callback([&] {
            action = [&] {
                btu::Btu g = btu::complement(btu::Btu::from_stream(std::cin));
                if (opts.json)
                    emit_json(btu::json_of(g));
                else
                    std::cout << g.to_text();
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("iso", "decide isomorphism of two units read from stdin");
        cmd->callback([&] {
            action = [&] {
                btu::Btu a = btu::Btu::from_stream(std::cin);
                btu::Btu b = btu::Btu::from_stream(std::cin);
                bool same = btu::is_isomorphic(a, b, opts.max_m);
                if (opts.json)
                    emit_json({{"isomorphic", same}});
                else
                    std::cout << (same ? "isomorphic" : "non-isomorphic") << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("canon", "canonical key of a unit read from stdin");
        auto witness = std::make_shared<bool>(false);
        cmd->add_flag("--witness", *witness, "also print the relabeling that reaches the key");
        cmd->callback([&, witness] {
            action = [&, witness] {
                btu::Btu g = btu::Btu::from_stream(std::cin);
                auto [key, wit] = btu::canonical_form_with_witness(g, opts.max_m);
                if (opts.json) {
                    btu::Json j = btu::json_of(key);
                    if (*witness) {
                        j["row_perm"] = wit.row_perm;
                        j["col_perm"] = wit.col_perm;
                    }
                    emit_json(j);
                } else {
                    std::cout << key.hex() << '\n';
                    if (*witness) {
                        std::cout << "rows:";
                        for (int p : wit.row_perm) std::cout << ' ' << p + 1;
                        std::cout << "\ncols:";
                        for (int q : wit.col_perm) std::cout << ' ' << q + 1;
                        std::cout << '\n';
                    }
                }
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("enumerate", "list one unit per isomorphism class");
        auto m = std::make_shared<int>(0);
        auto r = std::make_shared<int>(0);
        cmd->add_option("--m", *m, "matrix size")->required();
        cmd->add_option("--r", *r, "row/column sum")->required();
        cmd->callback([&, m, r] {
            action = [&, m, r] {
                auto classes = btu::enumerate_nonisomorphic(*m, *r, opts.limits());
                if (opts.json) {
                    btu::Json j = btu::Json::array();
                    for (const auto& g : classes) j.push_back(btu::json_of(g));
                    emit_json(j);
                } else {
                    for (std::size_t i = 0; i < classes.size(); ++i)
                        std::cout << (i ? "\n" : "") << classes[i].to_text();
                }
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("count", "number of isomorphism classes");
        auto m = std::make_shared<int>(0);
        auto r = std::make_shared<int>(0);
        cmd->add_option("--m", *m, "matrix size")->required();
        cmd->add_option("--r", *r, "row/column sum")->required();
        cmd->callback([&, m, r] {
            action = [&, m, r] {
                btu::BigInt n = btu::count_nonisomorphic(*m, *r, opts.limits());
                if (opts.json)
                    emit_json({{"count", n.str()}});
                else
                    std::cout << n.str() << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("cycles", "list the simple cycles of a unit from stdin");
        auto max_len = std::make_shared<int>(0);
        cmd->add_option("--max-len", *max_len, "longest cycle to report, default 2m");
        cmd->callback([&, max_len] {
            action = [&, max_len] {
                btu::Btu g = btu::Btu::from_stream(std::cin);
                int cap_len = *max_len > 0 ? *max_len : 2 * g.m();
                auto cycles = btu::enumerate_cycles(g, cap_len);
                if (opts.json) {
                    btu::Json j = btu::Json::array();
                    for (const auto& c : cycles) j.push_back(c);
                    emit_json(j);
                } else {
                    for (const auto& c : cycles) {
                        for (std::size_t i = 0; i < c.size(); ++i)
                            std::cout << (i ? " " : "") << c[i];
                        std::cout << '\n';
                    }
                }
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("cage", "smallest degree-2 unit of a given girth");
        auto girth_target = std::make_shared<int>(0);
        cmd->add_option("--girth", *girth_target, "even girth >= 4")->required();
        cmd->callback([&, girth_target] {
            action = [&, girth_target] {
                btu::Btu g = btu::cage(*girth_target);
                if (opts.json)
                    emit_json(btu::json_of(g));
                else
                    std::cout << g.to_text();
                return kExitOk;
            };
        });
    }

    // --- permutations --------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "compat", "enumerate permutations compatible with those on stdin");
        auto m = std::make_shared<int>(0);
        auto count_only = std::make_shared<bool>(false);
        auto beta = std::make_shared<std::string>();
        auto only_after = std::make_shared<bool>(false);
        auto tree_nodes = std::make_shared<bool>(false);
        auto depth = std::make_shared<int>(-1);
        auto successors = std::make_shared<bool>(false);
        cmd->add_option("--m", *m, "permutation size")->required();
        cmd->add_flag("--count", *count_only, "print only how many");
        auto* beta_opt = cmd->add_option(
            "--beta", *beta, "keep only partners inducing this partition (one stdin line)");
        cmd->add_flag("--only-after", *only_after,
                      "with --beta: keep partners after the input in lexicographic order")
            ->needs(beta_opt);
        auto* depth_opt = cmd->add_option("--depth", *depth, "depth for --tree-nodes");
        cmd->add_flag("--tree-nodes", *tree_nodes,
                      "print the prefix-tree node count at --depth instead")
            ->needs(depth_opt);
        cmd->add_flag("--successors", *successors,
                      "per-position successor counts for the two stdin permutations");
        cmd->callback([&, m, count_only, beta, only_after, tree_nodes, depth, successors] {
            action = [&, m, count_only, beta, only_after, tree_nodes, depth, successors] {
                if (*tree_nodes) {
                    if (*depth < 0) throw btu::DomainError("compat: --tree-nodes needs --depth");
                    btu::BigInt n = btu::permutation_tree_node_count(*m, *depth);
                    if (opts.json)
                        emit_json({{"nodes", n.str()}});
                    else
                        std::cout << n.str() << '\n';
                    return kExitOk;
                }
                auto existing = read_permutation_lines(std::cin);
                for (const auto& p : existing)
                    if (p.m() != *m) throw btu::DomainError("compat: stdin size mismatch with --m");
                if (*successors) {
                    if (existing.size() != 2)
                        throw btu::DomainError("compat: --successors needs exactly two stdin lines");
                    btu::SuccessorProfile prof =
                        btu::successor_profile(existing[0], existing[1]);
                    if (opts.json) {
                        emit_json({{"actual", prof.actual},
                                   {"predicted", prof.predicted},
                                   {"agrees", prof.agrees}});
                    } else {
                        std::cout << "actual:";
                        for (int c : prof.actual) std::cout << ' ' << c;
                        std::cout << "\npredicted:";
                        for (int c : prof.predicted) std::cout << ' ' << c;
                        std::cout << "\nagrees: " << (prof.agrees ? "yes" : "no") << '\n';
                    }
                    return kExitOk;
                }
                std::vector<btu::Permutation> partners;
                if (!beta->empty()) {
                    if (existing.size() != 1)
                        throw btu::DomainError("compat: --beta needs exactly one stdin line");
                    partners = btu::enumerate_compatible_with_partition(
                        existing[0], btu::Partition::parse(*beta), *only_after);
                } else {
                    if (*only_after)
                        throw btu::DomainError("compat: --only-after requires --beta");
                    partners = btu::enumerate_compatible(existing, *m);
                }
                if (*count_only) {
                    if (opts.json)
                        emit_json({{"count", partners.size()}});
                    else
                        std::cout << partners.size() << '\n';
                } else if (opts.json) {
                    btu::Json j = btu::Json::array();
                    for (const auto& p : partners) j.push_back(btu::json_of(p));
                    emit_json(j);
                } else {
                    for (const auto& p : partners) std::cout << p.to_string() << '\n';
                }
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "beta", "partition induced by the two compatible permutations on stdin");
        auto traversal = std::make_shared<bool>(false);
        cmd->add_flag("--traversal", *traversal, "measure by graph traversal instead of composition");
        cmd->callback([&, traversal] {
            action = [&, traversal] {
                auto perms = read_permutation_lines(std::cin);
                if (perms.size() != 2) throw btu::DomainError("beta: need exactly two stdin lines");
                btu::Partition out = *traversal ? btu::beta_of_traversal(perms[0], perms[1])
                                                : btu::beta_of(perms[0], perms[1]);
                if (opts.json)
                    emit_json(btu::json_of(out));
                else
                    std::cout << out.to_string() << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "fbeta", "closed-form partner count for a partition, optionally vs enumeration");
        auto m = std::make_shared<int>(0);
        auto r = std::make_shared<int>(2);
        auto beta = std::make_shared<std::string>();
        auto exhaustive = std::make_shared<bool>(false);
        cmd->add_option("--m", *m, "permutation size")->required();
        cmd->add_option("--r", *r, "chain length the formula assumes")->capture_default_str();
        cmd->add_option("--beta", *beta, "partition, e.g. (2,2)")->required();
        cmd->add_flag("--exhaustive", *exhaustive,
                      "also count by enumeration (degree 2 only); the two often differ");
        cmd->callback([&, m, r, beta, exhaustive] {
            action = [&, m, r, beta, exhaustive] {
                btu::Partition b = btu::Partition::parse(*beta);
                btu::Rational formula = btu::f_beta_closed_form(*m, *r, b);
                std::optional<std::size_t> actual;
                if (*exhaustive) {
                    if (*r != 2)
                        throw btu::DomainError("fbeta: --exhaustive is defined for --r 2");
                    actual = btu::enumerate_compatible_with_partition(
                                 btu::Permutation::identity(*m), b)
                                 .size();
                }
                if (opts.json) {
                    btu::Json j{{"formula", btu::json_of(formula)}};
                    if (actual) j["exhaustive"] = *actual;
                    emit_json(j);
                } else {
                    if (actual)
                        std::cout << "formula: " << rational_str(formula)
                                  << "\nexhaustive: " << *actual << '\n';
                    else
                        std::cout << rational_str(formula) << '\n';
                }
                return kExitOk;
            };
        });
    }

    // --- constrained families -------------------------------------------------
    {
        auto* cmd = app.add_subcommand("phi-build", "build one family member for a spec");
        auto spec = std::make_shared<std::string>();
        cmd->add_option("--spec", *spec, "family spec, e.g. \"m=6; betas=(3,3)|(2,2,2)\"")
            ->required();
        cmd->callback([&, spec] {
            action = [&, spec] {
                auto member = btu::build_phi_member(btu::PhiSpec::parse(*spec), opts.seed);
                if (!member) {
                    std::cerr << "no member satisfies the spec\n";
                    return kExitNotFound;
                }
                if (opts.json)
                    emit_json(btu::json_of(*member));
                else
                    std::cout << member->to_text();
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("phi-enum", "list every family member for a spec");
        auto spec = std::make_shared<std::string>();
        auto limit = std::make_shared<std::size_t>(0);
        cmd->add_option("--spec", *spec, "family spec")->required();
        cmd->add_option("--limit", *limit, "stop after this many members");
        cmd->callback([&, spec, limit] {
            action = [&, spec, limit] {
                std::optional<std::size_t> cap_members;
                if (*limit > 0) cap_members = *limit;
                btu::PhiEnumeration fam =
                    btu::enumerate_phi(btu::PhiSpec::parse(*spec), cap_members);
                if (opts.json) {
                    btu::Json members = btu::Json::array();
                    for (const auto& rep : fam.members) members.push_back(btu::json_of(rep));
                    emit_json({{"members", members}, {"truncated", fam.truncated}});
                } else {
                    for (std::size_t i = 0; i < fam.members.size(); ++i)
                        std::cout << (i ? "\n" : "") << fam.members[i].to_text();
                    if (fam.truncated) std::cerr << "truncated at " << *limit << " members\n";
                }
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("phi-count", "isomorphism classes hit by a family");
        auto spec = std::make_shared<std::string>();
        cmd->add_option("--spec", *spec, "family spec")->required();
        cmd->callback([&, spec] {
            action = [&, spec] {
                std::size_t n = btu::count_nonisomorphic_in_phi(btu::PhiSpec::parse(*spec));
                if (opts.json)
                    emit_json({{"count", n}});
                else
                    std::cout << n << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "profile", "pairwise partitions of a permutation table read from stdin");
        auto decompose = std::make_shared<bool>(false);
        auto assemble = std::make_shared<bool>(false);
        auto check4 = std::make_shared<bool>(false);
        cmd->add_flag("--decompose", *decompose,
                      "read a matrix instead and print its permutation table");
        cmd->add_flag("--assemble", *assemble, "print the unit the table overlays to");
        cmd->add_flag("--check-4cycle", *check4, "report whether the table's unit has girth 4");
        cmd->callback([&, decompose, assemble, check4] {
            action = [&, decompose, assemble, check4] {
                if (*decompose) {
                    btu::PermutationRep rep = btu::decompose(btu::Btu::from_stream(std::cin));
                    if (opts.json)
                        emit_json(btu::json_of(rep));
                    else
                        std::cout << rep.to_text();
                    return kExitOk;
                }
                btu::PermutationRep rep = btu::PermutationRep::from_text(read_all_stdin());
                if (*assemble) {
                    btu::Btu g = btu::to_btu(rep);
                    if (opts.json)
                        emit_json(btu::json_of(g));
                    else
                        std::cout << g.to_text();
                    return kExitOk;
                }
                if (*check4) {
                    bool has = btu::has_4cycle(rep);
                    if (opts.json)
                        emit_json({{"has_4cycle", has}});
                    else
                        std::cout << (has ? "yes" : "no") << '\n';
                    return kExitOk;
                }
                btu::PartitionProfile prof = btu::partition_profile(rep);
                if (opts.json) {
                    emit_json(btu::json_of(prof));
                } else {
                    for (const auto& [pair, beta] : prof)
                        std::cout << pair.first << ' ' << pair.second << ' ' << beta.to_string()
                                  << '\n';
                }
                return kExitOk;
            };
        });
    }

    // --- cycle indices ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("zindex", "cycle index of a named permutation group");
        auto group = std::make_shared<std::string>();
        auto h_of = std::make_shared<std::string>();
        auto* gopt = cmd->add_option("--group", *group, "symmetric:n, cyclic:n, or dihedral:n");
        cmd->add_option("--h-count", *h_of,
                        "instead: permutations in S_n with this cycle type, e.g. (2,1)")
            ->excludes(gopt);
        cmd->callback([&, group, h_of] {
            if (group->empty() && h_of->empty())
                throw CLI::RequiredError("zindex: one of --group, --h-count");
            action = [&, group, h_of] {
                if (!h_of->empty()) {
                    btu::BigInt n = btu::h_count(parse_cycle_type(*h_of));
                    if (opts.json)
                        emit_json({{"count", n.str()}});
                    else
                        std::cout << n.str() << '\n';
                    return kExitOk;
                }
                btu::CycleIndexPoly z = parse_poly_spec(*group, opts);
                if (opts.json)
                    emit_json(btu::json_of(z));
                else
                    std::cout << z.to_string() << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("cap", "superposition count of two or more cycle indices");
        auto polys = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--poly", *polys, "cycle index spec, repeatable")->expected(-2);
        cmd->callback([&, polys] {
            action = [&, polys] {
                std::vector<btu::CycleIndexPoly> zs;
                for (const auto& s : *polys) zs.push_back(parse_poly_spec(s, opts));
                btu::Rational out = btu::cap(zs);
                if (opts.json)
                    emit_json(btu::json_of(out));
                else
                    std::cout << rational_str(out) << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "cup", "superposition polynomial retaining per-cycle-type terms");
        auto polys = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--poly", *polys, "cycle index spec, repeatable")->expected(-2);
        cmd->callback([&, polys] {
            action = [&, polys] {
                std::vector<btu::CycleIndexPoly> zs;
                for (const auto& s : *polys) zs.push_back(parse_poly_spec(s, opts));
                btu::CycleIndexPoly out = btu::cup(zs);
                if (opts.json)
                    emit_json(btu::json_of(out));
                else
                    std::cout << out.to_string() << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "zpsi", "cycle index of a partition unit's symmetries on column labels");
        auto beta = std::make_shared<std::string>();
        cmd->add_option("--beta", *beta, "partition, e.g. (5)")->required();
        cmd->callback([&, beta] {
            action = [&, beta] {
                btu::CycleIndexPoly z =
                    btu::z_automorphism_of_psi(btu::Partition::parse(*beta), opts.max_m);
                if (opts.json)
                    emit_json(btu::json_of(z));
                else
                    std::cout << z.to_string() << '\n';
                return kExitOk;
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("bound", "superposition upper bound on a family's classes");
        auto spec = std::make_shared<std::string>();
        cmd->add_option("--spec", *spec, "family spec")->required();
        cmd->callback([&, spec] {
            action = [&, spec] {
                btu::Rational out = btu::upper_bound_phi(btu::PhiSpec::parse(*spec));
                if (opts.json)
                    emit_json(btu::json_of(out));
                else
                    std::cout << rational_str(out) << '\n';
                return kExitOk;
            };
        });
    }

    // --- reproduction -------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand(
            "reproduce", "recompute the built-in reference tables and report PASS/FAIL");
        auto only = std::make_shared<std::string>();
        cmd->add_option("--only", *only, "restrict to one section")
            ->check(CLI::IsMember(kReproSections));
        cmd->callback([&, only] {
            action = [&, only] { return run_reproduce(opts, *only); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const btu::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const btu::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}
