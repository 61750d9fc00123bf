#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "trinom/apt.hpp"
#include "trinom/density.hpp"
#include "trinom/implicit_field.hpp"
#include "trinom/records.hpp"

using namespace trinom;

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitMissingData = 2;
constexpr int kExitCertification = 3;
constexpr int kExitUsage = 64;

FactorTable load_table(const std::string& path) {
    FactorTable table = FactorTable::builtin();
    std::string chosen = path;
    if (chosen.empty())
        if (const char* env = std::getenv("TRITOOL_FACTORS")) chosen = env;
    if (!chosen.empty()) {
        std::ifstream in(chosen);
        if (!in) throw std::runtime_error("cannot open factor table: " + chosen);
        table.merge(FactorTable::load(in));
    }
    return table;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::string fixed4(const mpq_class& v) {
    mpz_class scaled = (v.get_num() * 10000 * 2 + v.get_den()) / (2 * v.get_den());
    std::ostringstream os;
    mpz_class ip = scaled / 10000, fp = scaled % 10000;
    os << ip << ".";
    std::string fs = fp.get_str();
    os << std::string(4 - fs.size(), '0') << fs;
    return os.str();
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params,
                    long elapsed_ms, const std::vector<SearchRecord>& records) {
    std::ofstream out(path);
    out << "{\"command\":\"" << command << "\",\"parameters\":{";
    for (std::size_t i = 0; i < params.size(); ++i)
        out << (i ? "," : "") << "\"" << params[i].first << "\":\""
            << params[i].second << "\"";
    out << "},\"tool_version\":\"" << kVersion << "\",\"elapsed_ms\":"
        << elapsed_ms << ",\"records\":[";
    for (std::size_t i = 0; i < records.size(); ++i)
        out << (i ? "," : "") << record_to_json(records[i]);
    out << "]}\n";
}

int cmd_search(std::int64_t r, std::int64_t delta, bool min_delta_search,
               std::int64_t cap, const std::string& mode,
               const std::string& factors, int threads,
               const std::string& out_path, const std::string& manifest) {
    auto start = std::chrono::steady_clock::now();
    FactorTable table = load_table(factors);
    CensusMode m = mode == "apt" ? CensusMode::Apt : CensusMode::Ait;

    std::int64_t use_delta = delta;
    if (min_delta_search) {
        auto found = min_increment(r, m, table, cap, threads);
        if (!found) {
            std::cerr << "no increment <= " << cap << " admits an accepted s\n";
            return kExitOk;
        }
        use_delta = found->first;
    }

    std::vector<SearchRecord> records =
        m == CensusMode::Apt ? search_apt(r, use_delta, table, {}, threads)
                             : search_ait(r, use_delta, {}, threads);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    for (const auto& rec : records) out << record_to_json(rec) << "\n";

    if (!manifest.empty()) {
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        write_manifest(manifest, "search",
                       {{"r", std::to_string(r)},
                        {"delta", std::to_string(use_delta)},
                        {"mode", mode}},
                       ms, records);
    }
    return kExitOk;
}

int cmd_verify(const std::string& rows_path, const std::string& factors) {
    FactorTable table = load_table(factors);
    std::ifstream in(rows_path);
    if (!in) {
        std::cerr << "cannot open rows file: " << rows_path << "\n";
        return kExitMissingData;
    }
    std::string line;
    int lineno = 0, bad = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        SearchRecord rec = record_from_json(line);
        bool ok = verify_table_row(rec, table);
        std::cout << (ok ? "ok      " : "MISMATCH") << "  r=" << rec.r
                  << " delta=" << rec.delta << " s=" << rec.s << "\n";
        if (!ok) ++bad;
    }
    if (bad) {
        std::cerr << bad << " row(s) failed verification\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_census(std::int64_t n_max, const std::string& mode,
               const std::string& factors, int threads, bool exact,
               const std::string& out_path) {
    FactorTable table = load_table(factors);
    CensusMode m = mode == "apt" ? CensusMode::Apt : CensusMode::Ait;
    auto rows = census(n_max, m, table, threads);
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "n,N_ait,E_ait";
    if (m == CensusMode::Apt) out << ",N_apt,E_apt";
    if (exact) out << ",E_ait_exact" << (m == CensusMode::Apt ? ",E_apt_exact" : "");
    out << "\n";
    for (const auto& row : rows) {
        out << row.n << "," << row.count_ait << "," << fixed4(row.running_e_ait);
        if (m == CensusMode::Apt) {
            if (row.apt_known)
                out << "," << row.count_apt << "," << fixed4(row.running_e_apt);
            else
                out << ",?,?";
        }
        if (exact) {
            out << "," << row.running_e_ait.get_str();
            if (m == CensusMode::Apt) out << "," << row.running_e_apt.get_str();
        }
        out << "\n";
    }
    const CensusRow& last = rows.back();
    std::cerr << "E_ait(" << n_max << ") = " << fixed4(last.running_e_ait);
    if (m == CensusMode::Apt)
        std::cerr << ", E_apt(" << n_max << ") = "
                  << (last.apt_known ? fixed4(last.running_e_apt) : "?");
    std::cerr << "\n";
    return kExitOk;
}

int cmd_field_demo(std::int64_t r, std::int64_t s, std::int64_t delta,
                   const std::string& action, std::int64_t count,
                   const std::string& element, const std::string& factors) {
    RingContextPtr ctx;
    try {
        ctx = RingContext::create(r, s, delta);
    } catch (const CertificationError& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    }
    if (action == "order") {
        FactorTable table = load_table(factors);
        mpz_class rho = ring_order_of_x(*ctx, table);
        mpz_class m = (mpz_class(1) << static_cast<unsigned>(r)) - 1;
        std::cout << "rho = " << rho << "\n";
        if (rho % m == 0) std::cout << "f = " << rho / m << "\n";
        return kExitOk;
    }
    if (action == "lfsr") {
        std::vector<bool> seed(static_cast<std::size_t>(ctx->degree()), false);
        if (element.empty()) {
            seed[0] = true;
        } else {
            DensePoly p = parse_poly(element);
            if (p.degree() >= ctx->degree()) {
                std::cerr << "seed polynomial too long\n";
                return kExitUsage;
            }
            for (std::int64_t i = 0; i < ctx->degree(); ++i)
                seed[static_cast<std::size_t>(i)] = p.coeff(i);
        }
        for (bool b : lfsr_stream(*ctx, seed, count)) std::cout << (b ? 1 : 0);
        std::cout << "\n";
        return kExitOk;
    }
    if (action == "canon") {
        DensePoly p = parse_poly(element);
        RingElement c = canonicalize(ctx->element(p));
        std::cout << to_hex(c.value()) << "  # " << to_string(c.value()) << "\n";
        return kExitOk;
    }
    std::cerr << "unknown field-demo action: " << action << "\n";
    return kExitUsage;
}

int cmd_factors(const std::string& check, bool print_builtin,
                const std::string& write_path) {
    if (!check.empty()) {
        std::ifstream in(check);
        if (!in) {
            std::cerr << "cannot open factor table: " << check << "\n";
            return kExitMissingData;
        }
        FactorTable t = FactorTable::load(in);
        std::cout << t.entries().size() << " entries, all products verified\n";
        return kExitOk;
    }
    FactorTable t = FactorTable::builtin();
    if (!write_path.empty()) {
        std::ofstream out(write_path);
        t.save(out);
        return kExitOk;
    }
    if (print_builtin) t.save(std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"search and verification of almost irreducible/primitive trinomials"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::int64_t r = 0, delta = 0, cap = 64, n_max = 0, count = 64, s = 0;
    bool min_delta_search = false, exact = false, print_builtin = false;
    std::string mode = "ait", factors, out_path, rows_path, manifest;
    std::string action, element, check, write_path;
    int threads = 1;

    auto* sc_search = app.add_subcommand("search", "enumerate accepted s for (r, delta)");
    sc_search->add_option("--r", r, "exponent r")->required();
    sc_search->add_option("--delta", delta, "increment delta");
    sc_search->add_flag("--min-delta-search", min_delta_search,
                        "find the minimal delta first");
    sc_search->add_option("--cap", cap, "delta cap for --min-delta-search");
    sc_search->add_option("--mode", mode, "ait | apt")
        ->check(CLI::IsMember({"ait", "apt"}));
    sc_search->add_option("--factors", factors, "factor table file");
    sc_search->add_option("--threads", threads, "worker threads");
    sc_search->add_option("--out", out_path, "output JSONL file");
    sc_search->add_option("--manifest", manifest, "write a run manifest JSON");

    auto* sc_verify = app.add_subcommand("verify", "re-verify golden JSONL rows");
    sc_verify->add_option("--rows", rows_path, "JSONL rows file")->required();
    sc_verify->add_option("--factors", factors, "factor table file");

    auto* sc_census = app.add_subcommand("census", "count almost irreducible/primitive trinomials");
    sc_census->add_option("--n-max", n_max, "largest degree")->required();
    sc_census->add_option("--mode", mode, "ait | apt")
        ->check(CLI::IsMember({"ait", "apt"}));
    sc_census->add_option("--factors", factors, "factor table file");
    sc_census->add_option("--threads", threads, "worker threads");
    sc_census->add_flag("--exact", exact, "append exact rational columns");
    sc_census->add_option("--out", out_path, "output CSV file");

    auto* sc_field = app.add_subcommand("field-demo", "implicit GF(2^r) arithmetic");
    sc_field->add_option("--r", r, "exponent r")->required();
    sc_field->add_option("--s", s, "middle exponent s")->required();
    sc_field->add_option("--delta", delta, "increment delta")->required();
    sc_field->add_option("action", action, "order | lfsr | canon")->required();
    sc_field->add_option("--count", count, "bits to emit (lfsr)");
    sc_field->add_option("--element", element, "element or seed (hex or x^k form)");
    sc_field->add_option("--factors", factors, "factor table file");

    auto* sc_factors = app.add_subcommand("factors", "factor-table management");
    sc_factors->add_option("--check", check, "validate a factor table file");
    sc_factors->add_flag("--print-builtin", print_builtin, "print the built-in table");
    sc_factors->add_option("--write", write_path, "write the built-in table to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sc_search->parsed())
            return cmd_search(r, delta, min_delta_search, cap, mode, factors,
                              threads, out_path, manifest);
        if (sc_verify->parsed()) return cmd_verify(rows_path, factors);
        if (sc_census->parsed())
            return cmd_census(n_max, mode, factors, threads, exact, out_path);
        if (sc_field->parsed())
            return cmd_field_demo(r, s, delta, action, count, element, factors);
        if (sc_factors->parsed())
            return cmd_factors(check, print_builtin, write_path);
    } catch (const MissingFactorization& e) {
        std::cerr << "missing factorization: " << e.what() << "\n";
        return kExitMissingData;
    } catch (const FactorTableError& e) {
        std::cerr << "factor table error: " << e.what() << "\n";
        return kExitMissingData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
