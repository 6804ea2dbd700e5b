// qgcipher: command-line front end for the quasigroup cipher toolkit.
//
// Subcommands: genkey, encrypt, decrypt, analyze, experiment. Exit codes:
// 0 success, 1 statistical check failure, 2 I/O error, 64 usage error,
// 65 data format error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qgc/codec.hpp>
#include <qgc/gamma.hpp>
#include <qgc/quasigroup.hpp>
#include <qgc/stats.hpp>
#include <qgc/transform.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

constexpr std::uint32_t kMaxCliOrder = 256;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The order-4 quasigroup of the reference experiment (1-based, row-major).
const std::vector<std::uint32_t> kReferenceTable4 = {
    1, 2, 4, 3,
    3, 4, 2, 1,
    4, 3, 1, 2,
    2, 1, 3, 4,
};

// Reference input letter distribution of the experiment.
const std::vector<double> kReferenceProbs = {0.70, 0.15, 0.10, 0.05};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return std::move(buffer).str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("cannot write " + path);
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string tuple_label(std::uint64_t rank0, std::uint32_t order, std::uint32_t m) {
    std::vector<std::uint32_t> digits(m);
    for (std::uint32_t j = m; j > 0; --j) {
        digits[j - 1] = static_cast<std::uint32_t>(rank0 % order) + 1;
        rank0 /= order;
    }
    std::string label;
    for (std::uint32_t j = 0; j < m; ++j) {
        if (j) label += '-';
        label += std::to_string(digits[j]);
    }
    return label;
}

qgc::SymbolString decode_input(const std::string& raw, const std::string& format,
                               std::uint32_t order) {
    if (format == "bytes") {
        return qgc::bytes_to_symbols(
            std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()),
            order);
    }
    return qgc::parse_symbol_text(raw, order);
}

std::string encode_output(const qgc::SymbolString& s, const std::string& format) {
    if (format == "bytes") {
        const std::vector<std::uint8_t> bytes = qgc::symbols_to_bytes(s);
        return std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    }
    return qgc::format_symbol_text(s);
}

// ---------------------------------------------------------------------------
// genkey

struct GenkeyOptions {
    std::uint32_t order = 4;
    std::uint32_t rounds = 3;
    std::uint64_t seed = 1;
    std::string out;
};

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit =
        (std::numeric_limits<std::uint64_t>::max() / bound) * bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

int run_genkey(const GenkeyOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    const std::uint64_t table_seed = rng();
    std::vector<qgc::RoundParams> rounds(opt.rounds);
    const std::uint64_t d1_span = std::uint64_t{opt.order} * opt.order + opt.order - 1;
    for (qgc::RoundParams& r : rounds) {
        r.leader = static_cast<qgc::Symbol>(bounded(rng, opt.order));
        r.first_block_length = 2 + bounded(rng, d1_span);
    }
    const qgc::PEKey key(qgc::random_quasigroup(opt.order, table_seed), rounds);
    write_file(opt.out, qgc::serialize_key(key));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// encrypt / decrypt

struct CryptOptions {
    std::string input;
    std::string key_path;
    std::string out;
    std::string format = "text";
};

int run_crypt(const CryptOptions& opt, bool encrypt) {
    const qgc::PEKey key = qgc::parse_key(read_file(opt.key_path));
    if (key.order() > kMaxCliOrder) {
        throw std::invalid_argument("key order " + std::to_string(key.order()) +
                                    " exceeds the CLI limit of 256");
    }
    const std::string raw = read_file(opt.input);
    const qgc::SymbolString in = decode_input(raw, opt.format, key.order());
    if (in.empty()) throw std::invalid_argument("empty input");
    const qgc::SymbolString out =
        encrypt ? qgc::pe_encrypt(key, in) : qgc::pe_decrypt(key, in);
    write_file(opt.out, encode_output(out, opt.format));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
    std::string input;
    std::string format = "text";
    std::uint32_t order = 4;
    std::uint32_t m_max = 4;
    bool overlapping = false;
    std::string out_dir;
};

void write_ngram_csv(const std::filesystem::path& path, const qgc::NGramDistribution& d) {
    std::string csv = "rank,tuple,count,prob\n";
    const double n = static_cast<double>(d.total_windows);
    for (std::uint64_t r = 0; r < d.counts.size(); ++r) {
        csv += std::to_string(r + 1) + "," + tuple_label(r, d.order, d.tuple_length) +
               "," + std::to_string(d.counts[r]) + "," +
               fmt(static_cast<double>(d.counts[r]) / n) + "\n";
    }
    write_file(path.string(), csv);
}

int run_analyze(const AnalyzeOptions& opt) {
    const qgc::SymbolString s =
        decode_input(read_file(opt.input), opt.format, opt.order);
    if (s.empty()) throw std::invalid_argument("empty input");
    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path dir(opt.out_dir);

    std::string summary =
        "m,windows,overlapping,statistic,df,p_value,l1,max_dev,expected_per_cell,adequate\n";
    for (std::uint32_t m = 1; m <= opt.m_max; ++m) {
        if (m > s.size()) {
            std::cerr << "analyze: input shorter than m=" << m << ", stopping\n";
            break;
        }
        write_ngram_csv(dir / ("ngram_m" + std::to_string(m) + ".csv"),
                        qgc::count_ngrams(s, m, opt.overlapping));
        // The test itself always uses non-overlapping windows; overlapping
        // counts violate its independence assumption.
        const qgc::UniformityReport r =
            qgc::chi_square_uniformity(qgc::count_ngrams(s, m, false));
        summary += std::to_string(m) + "," + std::to_string(s.size() / m) + ",false," +
                   fmt(r.statistic) + "," + std::to_string(r.degrees_of_freedom) + "," +
                   fmt(r.p_value) + "," + fmt(r.l1_distance) + "," +
                   fmt(r.max_deviation) + "," + fmt(r.expected_per_cell) + "," +
                   (r.sample_adequate ? "true" : "false") + "\n";
    }
    if (opt.m_max >= 2 && s.size() >= 2) {
        const qgc::ClassReport c = qgc::detect_classes(
            qgc::count_ngrams(s, 2, opt.overlapping), opt.order);
        summary += "\nblock,m,expected_classes,threshold,score,detected\n";
        summary += "class_detection,2," + std::to_string(opt.order) + "," +
                   fmt(qgc::kDefaultClassThreshold) + "," + fmt(c.separation_score) +
                   "," + (c.classes_detected ? "true" : "false") + "\n";
    }
    write_file((dir / "summary.csv").string(), summary);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
    std::uint32_t order = 4;
    std::uint64_t length = 1000000;
    std::uint32_t rounds = 3;
    std::uint32_t leader = 4;  // 1-based
    std::uint64_t d1 = 3;
    std::vector<double> probs;
    std::uint64_t seed = 1;
    std::string out_dir;
};

struct Check {
    std::string name;
    std::string status;  // PASS / FAIL / SKIP
    std::string detail;
};

void write_pair_csv(const std::filesystem::path& path, const char* col_a,
                    const char* col_b, const qgc::NGramDistribution& da,
                    const qgc::NGramDistribution& db) {
    std::string csv = std::string("rank,tuple,") + col_a + "," + col_b + "\n";
    for (std::uint64_t r = 0; r < da.counts.size(); ++r) {
        csv += std::to_string(r + 1) + "," + tuple_label(r, da.order, da.tuple_length) +
               "," + fmt(static_cast<double>(da.counts[r]) / static_cast<double>(da.total_windows)) +
               "," + fmt(static_cast<double>(db.counts[r]) / static_cast<double>(db.total_windows)) +
               "\n";
    }
    write_file(path.string(), csv);
}

int run_experiment(const ExperimentOptions& opt) {
    if (opt.leader < 1 || opt.leader > opt.order) {
        throw std::invalid_argument("leader " + std::to_string(opt.leader) +
                                    " out of range 1.." + std::to_string(opt.order));
    }
    std::vector<double> probs = opt.probs;
    if (probs.empty()) {
        if (opt.order != 4) {
            throw std::invalid_argument("provide --probs for orders other than 4");
        }
        probs = kReferenceProbs;
    }
    const qgc::LetterDistribution p(std::move(probs));
    if (p.order() != opt.order) {
        throw std::invalid_argument("got " + std::to_string(p.order()) +
                                    " probabilities for order " + std::to_string(opt.order));
    }

    const qgc::OperationTable table =
        opt.order == 4 ? qgc::OperationTable::from_external(4, kReferenceTable4)
                       : qgc::random_quasigroup(opt.order, opt.seed);
    const qgc::RoundParams round{static_cast<qgc::Symbol>(opt.leader - 1), opt.d1};
    const qgc::PEKey key(table, std::vector<qgc::RoundParams>(opt.rounds, round));

    const qgc::SymbolString message = qgc::sample_message(p, opt.length, opt.seed);
    const qgc::SymbolString cipher = qgc::pe_encrypt(key, message);
    const qgc::SymbolString e1 = qgc::e_transform(key.table(), round.leader, message);
    const qgc::SymbolString pe1 =
        qgc::pe_round_encrypt(key.parastrophes(), round, message).output;

    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path dir(opt.out_dir);

    std::vector<Check> checks;
    const auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass ? "PASS" : "FAIL", detail});
    };
    const auto skip = [&](const std::string& name, const std::string& detail) {
        checks.push_back({name, "SKIP", detail});
    };

    // Letter frequencies against the uniform target.
    const qgc::NGramDistribution letters = qgc::count_ngrams(cipher, 1, false);
    {
        const double uniform = 1.0 / opt.order;
        double lo = 1.0, hi = 0.0;
        for (std::uint64_t c : letters.counts) {
            const double f = static_cast<double>(c) / static_cast<double>(letters.total_windows);
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
        check("letters_in_range", lo >= uniform - 0.015 && hi <= uniform + 0.015,
              "frequencies in [" + fmt(lo) + ", " + fmt(hi) + "], required within " +
                  fmt(uniform) + " +- 0.015");
    }

    // Tuple distributions for the figure data and the uniformity tests.
    for (std::uint32_t m = 1; m <= 4 && m <= cipher.size(); ++m) {
        write_pair_csv(dir / ("tuples_m" + std::to_string(m) + ".csv"), "input_prob",
                       "output_prob", qgc::count_ngrams(message, m, true),
                       qgc::count_ngrams(cipher, m, true));

        const qgc::UniformityReport r =
            qgc::chi_square_uniformity(qgc::count_ngrams(cipher, m, false));
        const std::string name = "chi2_m" + std::to_string(m) +
                                 (m < 4 ? "_uniform" : "_rejects");
        if (!r.sample_adequate) {
            skip(name, "sample too small for m=" + std::to_string(m) +
                           " analysis (expected count " + fmt(r.expected_per_cell) + " < 5)");
        } else if (m < 4) {
            check(name, r.p_value >= 0.01,
                  "p=" + fmt(r.p_value) + " (statistic " + fmt(r.statistic) + ", df " +
                      std::to_string(r.degrees_of_freedom) + "), required p >= 0.01");
        } else {
            check(name, r.p_value < 0.01,
                  "p=" + fmt(r.p_value) + ", required p < 0.01");
        }
    }
    if (cipher.size() >= 4) {
        const double l1_in =
            qgc::distance_to_uniform(qgc::count_ngrams(message, 4, false)).l1;
        const double l1_out =
            qgc::distance_to_uniform(qgc::count_ngrams(cipher, 4, false)).l1;
        check("l1_m4_output_closer", l1_out < l1_in,
              "L1 to uniform: input " + fmt(l1_in) + ", output " + fmt(l1_out));
    }

    // Class structure of pairs after one E round versus one PE round.
    if (message.size() >= 2) {
        const qgc::NGramDistribution e1_pairs = qgc::count_ngrams(e1, 2, true);
        const qgc::NGramDistribution pe1_pairs = qgc::count_ngrams(pe1, 2, true);
        write_pair_csv(dir / "pairs_e1_vs_pe1.csv", "e1_prob", "pe1_prob", e1_pairs,
                       pe1_pairs);

        const qgc::ClassReport ce = qgc::detect_classes(e1_pairs, opt.order);
        const qgc::ClassReport cp = qgc::detect_classes(pe1_pairs, opt.order);
        {
            std::string csv =
                "transform,expected_classes,threshold,score,detected,class_means,class_sizes\n";
            for (const auto& [name, rep] :
                 {std::pair{"E1", &ce}, std::pair{"PE1", &cp}}) {
                std::string means, sizes;
                for (std::size_t i = 0; i < rep->class_means.size(); ++i) {
                    if (i) {
                        means += ';';
                        sizes += ';';
                    }
                    means += fmt(rep->class_means[i]);
                    sizes += std::to_string(rep->class_sizes[i]);
                }
                csv += std::string(name) + "," + std::to_string(opt.order) + "," +
                       fmt(qgc::kDefaultClassThreshold) + "," + fmt(rep->separation_score) +
                       "," + (rep->classes_detected ? "true" : "false") + "," + means +
                       "," + sizes + "\n";
            }
            write_file((dir / "class_report.csv").string(), csv);
        }

        std::vector<double> expected = qgc::expected_class_means(p, 1);
        std::sort(expected.begin(), expected.end(), std::greater<>());
        double worst = 0.0;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            worst = std::max(worst, std::fabs(ce.class_means[i] - expected[i]));
        }
        check("e1_class_means", worst <= 0.005,
              "largest mean error " + fmt(worst) + ", required <= 0.005");
        check("e1_classes_detected", ce.classes_detected,
              "separation score " + fmt(ce.separation_score) + ", threshold " +
                  fmt(qgc::kDefaultClassThreshold));
        check("pe1_classes_not_detected", !cp.classes_detected,
              "separation score " + fmt(cp.separation_score) + ", threshold " +
                  fmt(qgc::kDefaultClassThreshold));
        check("separation_ratio",
              ce.separation_score >= 5.0 * cp.separation_score,
              "E1 score " + fmt(ce.separation_score) + " vs PE1 score " +
                  fmt(cp.separation_score) + ", required ratio >= 5");
    }

    std::string summary = "check,status,detail\n";
    bool failed = false;
    for (const Check& c : checks) {
        summary += c.name + "," + c.status + ",\"" + c.detail + "\"\n";
        failed = failed || c.status == "FAIL";
    }
    write_file((dir / "summary.csv").string(), summary);
    std::cout << summary;
    return failed ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasigroup string-transformation cipher toolkit"};
    app.require_subcommand(1);

    GenkeyOptions genkey;
    CLI::App* genkey_cmd = app.add_subcommand("genkey", "Generate a random key file");
    genkey_cmd->add_option("--order", genkey.order, "Alphabet order")
        ->check(CLI::Range(2u, kMaxCliOrder))
        ->capture_default_str();
    genkey_cmd->add_option("--rounds", genkey.rounds, "Number of rounds")
        ->check(CLI::Range(1u, 64u))
        ->capture_default_str();
    genkey_cmd->add_option("--seed", genkey.seed, "PRNG seed")->capture_default_str();
    genkey_cmd->add_option("--out", genkey.out, "Key file path")->required();

    CryptOptions encrypt, decrypt;
    CLI::App* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a file");
    CLI::App* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a file");
    for (const auto& [cmd, opt] :
         {std::pair{encrypt_cmd, &encrypt}, std::pair{decrypt_cmd, &decrypt}}) {
        cmd->add_option("input", opt->input, "Input file")->required();
        cmd->add_option("--key", opt->key_path, "Key file")->required();
        cmd->add_option("--out", opt->out, "Output file")->required();
        cmd->add_option("--format", opt->format, "Input/output format")
            ->check(CLI::IsMember({"bytes", "text"}))
            ->capture_default_str();
    }

    AnalyzeOptions analyze;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "Tuple frequency and uniformity report");
    analyze_cmd->add_option("input", analyze.input, "Input file")->required();
    analyze_cmd->add_option("--format", analyze.format, "Input format")
        ->check(CLI::IsMember({"bytes", "text"}))
        ->capture_default_str();
    analyze_cmd->add_option("--order", analyze.order, "Alphabet order")
        ->check(CLI::Range(2u, kMaxCliOrder))
        ->capture_default_str();
    analyze_cmd->add_option("--m-max", analyze.m_max, "Largest tuple length")
        ->check(CLI::Range(1u, 8u))
        ->capture_default_str();
    analyze_cmd->add_option("--overlapping", analyze.overlapping,
                            "Count overlapping windows in the rank CSVs")
        ->capture_default_str();
    analyze_cmd->add_option("--out", analyze.out_dir, "Output directory")->required();

    ExperimentOptions experiment;
    CLI::App* experiment_cmd = app.add_subcommand(
        "experiment", "One-shot statistical experiment with CSV outputs");
    experiment_cmd->add_option("--order", experiment.order, "Alphabet order")
        ->check(CLI::Range(2u, kMaxCliOrder))
        ->capture_default_str();
    experiment_cmd->add_option("--length", experiment.length, "Message length")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
        ->capture_default_str();
    experiment_cmd->add_option("--rounds", experiment.rounds, "Number of PE rounds")
        ->check(CLI::Range(1u, 64u))
        ->capture_default_str();
    experiment_cmd->add_option("--leader", experiment.leader, "Initial leader (1-based)")
        ->capture_default_str();
    experiment_cmd->add_option("--d1", experiment.d1, "First block length")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32))
        ->capture_default_str();
    experiment_cmd
        ->add_option("--probs", experiment.probs,
                     "Input letter probabilities (defaults to the order-4 reference "
                     "distribution 0.70,0.15,0.10,0.05)")
        ->delimiter(',');
    experiment_cmd->add_option("--seed", experiment.seed, "PRNG seed")
        ->capture_default_str();
    experiment_cmd->add_option("--out", experiment.out_dir, "Output directory")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (genkey_cmd->parsed()) return run_genkey(genkey);
        if (encrypt_cmd->parsed()) return run_crypt(encrypt, true);
        if (decrypt_cmd->parsed()) return run_crypt(decrypt, false);
        if (analyze_cmd->parsed()) return run_analyze(analyze);
        if (experiment_cmd->parsed()) return run_experiment(experiment);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qgc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
