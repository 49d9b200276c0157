#include "banbury/banburismus.hpp"
#include "banbury/bayes.hpp"
#include "banbury/bombe.hpp"
#include "banbury/classical.hpp"
#include "banbury/pipeline.hpp"
#include "banbury/scritchmus.hpp"
#include "banbury/traffic.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace banbury;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("BANBURY_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw std::runtime_error("BANBURY_SEED is not a number");
        return v;
    }
    return cli_seed;
}

enigma::Catalogue catalogue_from(const std::string& path) {
    return path.empty() ? enigma::Catalogue::standard() : enigma::Catalogue::load(path);
}

classical::SubstitutionKey mono_key_for(const std::string& cipher, const std::string& key) {
    if (cipher == "atbash")
        return classical::atbash_key();
    if (cipher == "albam")
        return classical::albam_key();
    if (cipher == "caesar") {
        if (key.empty())
            throw std::runtime_error("caesar needs --key <shift>");
        return classical::caesar_key(std::stoi(key));
    }
    throw std::runtime_error("unknown monoalphabetic cipher '" + cipher + "'");
}

int run_classical(const std::string& mode, const std::string& cipher, const std::string& key,
                  int width, const std::string& text_arg, int min_ngram) {
    std::string text = normalize_text(text_arg);
    if (mode == "freq") {
        if (text.empty())
            throw std::runtime_error("empty message");
        classical::FrequencyTable table = classical::letter_frequencies(text);
        for (int i = 0; i < table.alphabet().size(); ++i) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%c\t%.6f\n", table.alphabet().letter(i),
                          table.fractions()[static_cast<size_t>(i)]);
            std::cout << buf;
        }
        return 0;
    }
    if (mode == "kasiski") {
        for (const auto& candidate : classical::kasiski_candidates(text, min_ngram))
            std::cout << candidate.key_length << '\t' << candidate.votes << '\n';
        return 0;
    }
    const bool decipher = mode == "decipher";
    std::string out;
    if (cipher == "scytale") {
        out = decipher ? classical::scytale_decipher(text, width) : classical::scytale_encipher(text, width);
    } else if (cipher == "vigenere") {
        if (key.empty())
            throw std::runtime_error("vigenere needs --key");
        std::string k = normalize_text(key);
        out = decipher ? classical::vigenere_decipher(text, k) : classical::vigenere_encipher(text, k);
    } else {
        classical::SubstitutionKey sub = mono_key_for(cipher, key);
        out = decipher ? classical::mono_decipher(text, sub) : classical::mono_encipher(text, sub);
    }
    std::cout << out << '\n';
    return 0;
}

void write_shortlist_tsv(const std::string& path, const scritchmus::DeduceResult& result) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "type\tvalue\tweight_db\n";
    char buf[64];
    for (const scritchmus::Chain& chain : result.chains) {
        std::string text;
        for (size_t i = 0; i < chain.elements.size(); ++i) {
            if (i)
                text += ' ';
            text += static_cast<char>('A' + chain.elements[i].letter);
            text += '@';
            text += std::to_string(chain.elements[i].position);
        }
        std::snprintf(buf, sizeof buf, "%.4f", chain.weight_db);
        out << "chain\t" << text << '\t' << buf << '\n';
    }
    for (const scritchmus::Enumerated& e : result.alphabets)
        out << "alphabet\t" << e.hypothesis.grid() << "\t\n";
    for (const std::string& rotor : result.rotor_shortlist)
        out << "rotor\t" << rotor << "\t\n";
}

std::vector<std::string> read_shortlist_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<std::string> rotors;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string type, value;
        if (!std::getline(row, type, '\t') || !std::getline(row, value, '\t'))
            continue;
        if (type == "rotor")
            rotors.push_back(value);
    }
    if (rotors.empty())
        throw std::runtime_error("no rotor rows in " + path);
    return rotors;
}

bombe::Crib read_crib_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open crib file: " + path);
    std::string plain, cipher, anchor;
    if (!std::getline(in, plain) || !std::getline(in, cipher) || !std::getline(in, anchor))
        throw std::runtime_error(path + ": expected plain row, cipher row and anchor");
    return bombe::Crib::make(normalize_text(plain), normalize_text(cipher), std::stoi(anchor));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical cryptanalysis workbench"};
    app.require_subcommand(1);

    // classical
    auto* classical_cmd = app.add_subcommand("classical", "historical ciphers and statistics");
    classical_cmd->require_subcommand(1);
    std::string cl_cipher = "caesar", cl_key, cl_text;
    int cl_width = 5, cl_min_ngram = 3;
    for (const char* mode : {"encipher", "decipher", "freq", "kasiski"}) {
        auto* sub = classical_cmd->add_subcommand(mode);
        sub->add_option("--cipher", cl_cipher, "scytale|atbash|albam|caesar|vigenere");
        sub->add_option("--key", cl_key, "cipher key (shift or keyword)");
        sub->add_option("--width", cl_width, "scytale width");
        sub->add_option("--min-ngram", cl_min_ngram, "kasiski minimum n-gram");
        sub->add_option("--text", cl_text, "message text")->required();
    }

    // enigma
    auto* enigma_cmd = app.add_subcommand("enigma", "encipher or decipher with a key sheet");
    enigma_cmd->require_subcommand(1);
    std::string en_day, en_text, en_start, en_rotors;
    for (const char* mode : {"encipher", "decipher"}) {
        auto* sub = enigma_cmd->add_subcommand(mode);
        sub->add_option("--day", en_day, "key sheet file")->required();
        sub->add_option("--start", en_start, "rotor start positions (default: the grund)");
        sub->add_option("--rotors", en_rotors, "catalogue file (default: built-in)");
        sub->add_option("--text", en_text, "message text")->required();
    }

    // traffic
    auto* traffic_cmd = app.add_subcommand("traffic", "synthetic day traffic");
    traffic_cmd->require_subcommand(1);
    auto* keygen_cmd = traffic_cmd->add_subcommand("keygen", "draw a random daily key");
    std::string kg_out;
    std::uint64_t kg_seed = 1;
    int kg_plugs = 10;
    bool kg_random_rings = false;
    keygen_cmd->add_option("--out", kg_out, "key sheet output")->required();
    keygen_cmd->add_option("--seed", kg_seed, "random seed");
    keygen_cmd->add_option("--plugs", kg_plugs, "plug pair count");
    keygen_cmd->add_flag("--random-rings", kg_random_rings, "randomize ring settings");

    auto* generate_cmd = traffic_cmd->add_subcommand("generate", "generate an intercept corpus");
    std::string gen_day, gen_out, gen_model;
    std::uint64_t gen_seed = 42;
    int gen_n = 200, gen_min_len = 120, gen_max_len = 240;
    double gen_cluster = 0.3;
    bool gen_doubled = false;
    generate_cmd->add_option("--day", gen_day, "key sheet file")->required();
    generate_cmd->add_option("--n", gen_n, "message count");
    generate_cmd->add_option("--seed", gen_seed, "random seed");
    generate_cmd->add_option("--out", gen_out, "corpus output")->required();
    generate_cmd->add_option("--min-len", gen_min_len, "minimum message length");
    generate_cmd->add_option("--max-len", gen_max_len, "maximum message length");
    generate_cmd->add_option("--cluster", gen_cluster, "fraction of keys sharing the day prefix");
    generate_cmd->add_flag("--doubled", gen_doubled, "doubled indicators (pre-1942)");
    generate_cmd->add_option("--model", gen_model, "plaintext corpus file (default: letter model)");

    // banburismus
    auto* ban_cmd = app.add_subcommand("banburismus", "score comparable intercept pairs");
    ban_cmd->require_subcommand(1);
    auto* score_cmd = ban_cmd->add_subcommand("score");
    std::string sc_corpus, sc_out;
    int sc_min_overlap = 10;
    score_cmd->add_option("--corpus", sc_corpus, "intercept corpus")->required();
    score_cmd->add_option("--out", sc_out, "evidence table output")->required();
    score_cmd->add_option("--min-overlap", sc_min_overlap, "minimum overlap to score");

    // scritchmus
    auto* scr_cmd = app.add_subcommand("scritchmus", "chains, alphabets and the rotor shortlist");
    scr_cmd->require_subcommand(1);
    auto* deduce_cmd = scr_cmd->add_subcommand("deduce");
    std::string de_evidence, de_corpus, de_rotors, de_out;
    double de_min_weight = 7.0;
    deduce_cmd->add_option("--evidence", de_evidence, "banburismus evidence table")->required();
    deduce_cmd->add_option("--corpus", de_corpus, "intercept corpus (resolves indicators)")->required();
    deduce_cmd->add_option("--rotors", de_rotors, "catalogue file (default: built-in)");
    deduce_cmd->add_option("--out", de_out, "shortlist output")->required();
    deduce_cmd->add_option("--min-weight", de_min_weight, "deduction threshold in decibans");

    // bombe
    auto* bombe_cmd = app.add_subcommand("bombe", "crib-driven key search");
    bombe_cmd->require_subcommand(1);
    auto* run_cmd = bombe_cmd->add_subcommand("run");
    std::string bo_crib, bo_orders, bo_rotors, bo_checkpoint, bo_out, bo_reflector = "B";
    int bo_jobs = 1;
    bool bo_no_diagonal = false;
    run_cmd->add_option("--crib", bo_crib, "crib file: plain row, cipher row, anchor")->required();
    run_cmd->add_option("--orders", bo_orders, "scritchmus shortlist (rotor rows)")->required();
    run_cmd->add_option("--rotors", bo_rotors, "catalogue file (default: built-in)");
    run_cmd->add_option("--jobs", bo_jobs, "worker threads");
    run_cmd->add_option("--checkpoint", bo_checkpoint, "resumable state file");
    run_cmd->add_option("--out", bo_out, "candidate output")->required();
    run_cmd->add_option("--reflector", bo_reflector, "reflector name");
    run_cmd->add_flag("--no-diagonal", bo_no_diagonal, "disable the diagonal-board closure");

    // bayes
    auto* bayes_cmd = app.add_subcommand("bayes", "posterior updates");
    bayes_cmd->require_subcommand(1);
    auto* coin_cmd = bayes_cmd->add_subcommand("coin", "the fair-vs-double-headed coin");
    std::string coin_flips;
    coin_cmd->add_option("--flips", coin_flips, "flip sequence, e.g. HHHHHHHHHH")->required();

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "the whole decryption pipeline");
    pipe_cmd->require_subcommand(1);
    auto* pipe_run = pipe_cmd->add_subcommand("run");
    std::uint64_t pi_seed = 42;
    int pi_jobs = 1, pi_messages = 200;
    std::string pi_out;
    pipe_run->add_option("--seed", pi_seed, "run seed (BANBURY_SEED overrides)");
    pipe_run->add_option("--jobs", pi_jobs, "worker threads for the bombe stage");
    pipe_run->add_option("--messages", pi_messages, "messages per day");
    pipe_run->add_option("--out", pi_out, "canonical report output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classical_cmd->parsed()) {
            const std::string mode = classical_cmd->get_subcommands().front()->get_name();
            return run_classical(mode, cl_cipher, cl_key, cl_width, cl_text, cl_min_ngram);
        }

        if (enigma_cmd->parsed()) {
            enigma::Catalogue catalogue = catalogue_from(en_rotors);
            keysheet::DailyKey day = keysheet::load_daily_key(en_day);
            std::string start = en_start.empty() ? day.grundstellung : en_start;
            enigma::MachineState machine = keysheet::machine_for(day, catalogue, start);
            std::string text = normalize_text(en_text);
            auto [letters, end_state] =
                enigma::encipher_message(machine, Alphabet::latin26().indices(text));
            (void)end_state;
            std::cout << Alphabet::latin26().letters(letters) << '\n';
            return 0;
        }

        if (keygen_cmd->parsed()) {
            Rng rng(effective_seed(kg_seed));
            keysheet::DailyKey key = keysheet::random_daily_key(enigma::Catalogue::standard(),
                                                                kg_plugs, kg_random_rings, rng);
            keysheet::store_daily_key(kg_out, key);
            std::cout << "wrote " << kg_out << '\n';
            return 0;
        }

        if (generate_cmd->parsed()) {
            enigma::Catalogue catalogue = enigma::Catalogue::standard();
            keysheet::DailyKey day = keysheet::load_daily_key(gen_day);
            keysheet::TrafficModel model =
                gen_model.empty() ? keysheet::TrafficModel::fitted(classical::italian_frequencies())
                                  : keysheet::TrafficModel::from_corpus(gen_model);
            keysheet::TrafficConfig config;
            config.messages = gen_n;
            config.length = {gen_min_len, gen_max_len};
            config.cluster_fraction = gen_cluster;
            config.doubled = gen_doubled;
            Rng rng(effective_seed(gen_seed));
            keysheet::store_corpus(gen_out, keysheet::generate_day_traffic(day, catalogue, model, config, rng));
            std::cout << "wrote " << gen_out << '\n';
            return 0;
        }

        if (score_cmd->parsed()) {
            banburismus::ScoreConfig config = banburismus::ScoreConfig::defaults();
            config.min_overlap = sc_min_overlap;
            banburismus::write_evidence_tsv(sc_out,
                                            banburismus::score_corpus(keysheet::load_corpus(sc_corpus), config));
            std::cout << "wrote " << sc_out << '\n';
            return 0;
        }

        if (deduce_cmd->parsed()) {
            enigma::Catalogue catalogue = catalogue_from(de_rotors);
            std::vector<keysheet::Intercept> corpus = keysheet::load_corpus(de_corpus);
            std::vector<banburismus::EvidenceRow> rows = banburismus::read_evidence_tsv(de_evidence);

            // top shift per pair, oriented so the offset arc follows the slide
            std::vector<scritchmus::Deduction> deductions;
            std::string last_pair;
            const Alphabet& a = Alphabet::latin26();
            for (const banburismus::EvidenceRow& row : rows) {
                if (row.pair_id == last_pair)
                    continue;
                last_pair = row.pair_id;
                if (row.weight_db < de_min_weight)
                    continue;
                auto plus = row.pair_id.find('+');
                std::string id1 = row.pair_id.substr(0, plus), id2 = row.pair_id.substr(plus + 1);
                const keysheet::Intercept *m1 = nullptr, *m2 = nullptr;
                for (const keysheet::Intercept& intercept : corpus) {
                    if (intercept.id == id1)
                        m1 = &intercept;
                    if (intercept.id == id2)
                        m2 = &intercept;
                }
                if (!m1 || !m2)
                    throw std::runtime_error("evidence row references unknown intercept " + row.pair_id);
                int third1 = a.index(m1->indicator[2]), third2 = a.index(m2->indicator[2]);
                scritchmus::Deduction d;
                d.letter_a = row.shift > 0 ? third2 : third1;
                d.letter_b = row.shift > 0 ? third1 : third2;
                d.offset = row.shift > 0 ? row.shift : -row.shift;
                d.weight_db = row.weight_db;
                deductions.push_back(d);
            }

            scritchmus::DeduceConfig config;
            config.min_weight_db = de_min_weight;
            write_shortlist_tsv(de_out, scritchmus::deduce(deductions, catalogue, config));
            std::cout << "wrote " << de_out << '\n';
            return 0;
        }

        if (run_cmd->parsed()) {
            enigma::Catalogue catalogue = catalogue_from(bo_rotors);
            bombe::Crib crib = read_crib_file(bo_crib);
            bombe::SearchConfig config;
            config.jobs = bo_jobs;
            config.checkpoint_path = bo_checkpoint;
            config.diagonal = !bo_no_diagonal;
            config.reflector = bo_reflector;
            bombe::SearchResult result = bombe::bombe_search(
                crib, catalogue, bombe::orders_for_shortlist(read_shortlist_tsv(bo_orders), catalogue),
                config);
            std::ofstream out(bo_out);
            if (!out)
                throw std::runtime_error("cannot write " + bo_out);
            out << "order\tposition\tsurvivors\n";
            const Alphabet& a = Alphabet::latin26();
            for (const bombe::Candidate& c : result.candidates) {
                out << c.order[0] << ' ' << c.order[1] << ' ' << c.order[2] << '\t';
                for (int p : c.position)
                    out << a.letter(p);
                out << '\t' << c.survivor_count << '\n';
            }
            std::cout << "tested " << result.positions_tested << " positions, "
                      << result.candidates.size() << " candidates -> " << bo_out << '\n';
            return 0;
        }

        if (coin_cmd->parsed()) {
            double p = 0.5;
            std::cout << "prior\t" << p << '\n';
            for (const bayes::CoinStep& step : bayes::coin_trajectory(coin_flips, p)) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.12g", step.posterior_fair);
                std::cout << step.flip << '\t' << buf << '\n';
            }
            return 0;
        }

        if (pipe_run->parsed()) {
            pipeline::PipelineConfig config;
            config.seed = effective_seed(pi_seed);
            config.jobs = pi_jobs;
            config.traffic.messages = pi_messages;
            pipeline::PipelineReport report = pipeline::run_pipeline(config);
            if (!pi_out.empty()) {
                std::ofstream out(pi_out);
                if (!out)
                    throw std::runtime_error("cannot write " + pi_out);
                report.write_tsv(out);
            }
            std::cout << report.summary();
            return report.success ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
