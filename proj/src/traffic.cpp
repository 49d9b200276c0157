#include "banbury/traffic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace banbury::keysheet {

namespace {

const Alphabet& latin() {
    return Alphabet::latin26();
}

} // namespace

TrafficModel TrafficModel::fitted(const classical::FrequencyTable& language, double coincidence_target) {
    const int n = language.alphabet().size();
    const double uniform_rate = 1.0 / n;
    if (coincidence_target <= uniform_rate || coincidence_target > 1.0)
        throw std::invalid_argument("coincidence target must be in (1/N, 1]");
    double language_rate = language.coincidence_rate();
    if (language_rate < coincidence_target)
        throw std::invalid_argument("language table is too flat for the requested coincidence rate");
    // blend p = l*lang + (1-l)*uniform; sum p^2 = 1/N + l^2 (S - 1/N)
    double lambda = std::sqrt((coincidence_target - uniform_rate) / (language_rate - uniform_rate));
    TrafficModel model;
    model.weights_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        model.weights_[static_cast<size_t>(i)] =
            lambda * language.fractions()[static_cast<size_t>(i)] + (1.0 - lambda) * uniform_rate;
    return model;
}

TrafficModel TrafficModel::from_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open corpus text: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    TrafficModel model;
    model.corpus_ = germanize(buf.str());
    if (model.corpus_.size() < 26)
        throw std::runtime_error("corpus text too short: " + path);
    return model;
}

std::string TrafficModel::sample_plaintext(int length, Rng& rng) const {
    if (length < 1)
        throw std::invalid_argument("message length must be positive");
    std::string out;
    out.reserve(static_cast<size_t>(length));
    if (!corpus_.empty()) {
        size_t start = rng.below(static_cast<std::uint32_t>(corpus_.size()));
        for (int i = 0; i < length; ++i)
            out.push_back(corpus_[(start + static_cast<size_t>(i)) % corpus_.size()]);
        return out;
    }
    for (int i = 0; i < length; ++i)
        out.push_back(latin().letter(rng.discrete(weights_)));
    return out;
}

double TrafficModel::coincidence_rate() const {
    if (!corpus_.empty()) {
        std::vector<double> counts(26, 0.0);
        for (char c : corpus_)
            counts[static_cast<size_t>(latin().index(c))] += 1.0;
        double s = 0.0;
        for (double c : counts)
            s += (c / corpus_.size()) * (c / corpus_.size());
        return s;
    }
    double s = 0.0;
    for (double w : weights_)
        s += w * w;
    return s;
}

std::string germanize(std::string_view raw) {
    static const char* kDigits[10] = {"NULL", "EINS", "ZWEI", "DREI", "VIER",
                                      "FUENF", "SECHS", "SIEBEN", "ACHT", "NEUN"};
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (c >= 'a' && c <= 'z')
            c = static_cast<unsigned char>(c - 'a' + 'A');
        if (c >= 'A' && c <= 'Z') {
            out.push_back(static_cast<char>(c));
        } else if (c >= '0' && c <= '9') {
            out += kDigits[c - '0'];
        } else if (c == ' ' || c == '\n' || c == '\t') {
            if (!out.empty() && out.back() != 'X')
                out.push_back('X');
        } else if (c == 0xC3 && i + 1 < raw.size()) {
            // the common two-byte umlauts: ä ö ü ß and their capitals
            unsigned char d = static_cast<unsigned char>(raw[++i]);
            switch (d) {
            case 0xA4: case 0x84: out += "AE"; break;
            case 0xB6: case 0x96: out += "OE"; break;
            case 0xBC: case 0x9C: out += "UE"; break;
            case 0x9F: out += "SS"; break;
            default: break;
            }
        }
    }
    return out;
}

std::string sample_message_key(double cluster_fraction, std::string_view day_prefix, Rng& rng) {
    std::string key;
    if (day_prefix.size() != 2)
        throw std::invalid_argument("day prefix must be two letters");
    if (rng.unit() < cluster_fraction) {
        key = std::string(day_prefix);
    } else {
        key.push_back(latin().letter(static_cast<int>(rng.below(26))));
        key.push_back(latin().letter(static_cast<int>(rng.below(26))));
    }
    key.push_back(latin().letter(static_cast<int>(rng.below(26))));
    return key;
}

std::vector<Intercept> generate_day_traffic(const DailyKey& key, const enigma::Catalogue& catalogue,
                                            const TrafficModel& model, const TrafficConfig& config,
                                            Rng& rng) {
    if (config.messages < 1)
        throw std::invalid_argument("message count must be at least 1");
    if (config.length.min_length < 1 || config.length.max_length < config.length.min_length)
        throw std::invalid_argument("bad length distribution");

    std::string day_prefix;
    day_prefix.push_back(latin().letter(static_cast<int>(rng.below(26))));
    day_prefix.push_back(latin().letter(static_cast<int>(rng.below(26))));

    std::vector<Intercept> out;
    out.reserve(static_cast<size_t>(config.messages));
    for (int m = 0; m < config.messages; ++m) {
        int span = config.length.max_length - config.length.min_length + 1;
        int length = config.length.min_length + static_cast<int>(rng.below(static_cast<std::uint32_t>(span)));
        std::string message_key = sample_message_key(config.cluster_fraction, day_prefix, rng);
        std::string plaintext = model.sample_plaintext(length, rng);
        char id[16];
        std::snprintf(id, sizeof id, "M%04d", m + 1);
        char ts[16];
        std::snprintf(ts, sizeof ts, "%02d%02d", (m * 7) % 24, (m * 13) % 60);
        out.push_back(transmit(key, catalogue, message_key, plaintext, config.doubled, id, ts));
    }
    return out;
}

DailyKey random_daily_key(const enigma::Catalogue& catalogue, int plug_pairs, bool random_rings,
                          Rng& rng, const std::string& reflector) {
    const auto& rotors = catalogue.rotors();
    if (rotors.size() < 3)
        throw std::invalid_argument("catalogue needs at least 3 rotors");
    if (plug_pairs < 0 || plug_pairs > 13)
        throw std::invalid_argument("plug pair count out of range");

    DailyKey key;
    std::vector<size_t> chosen;
    while (chosen.size() < 3) {
        size_t r = rng.below(static_cast<std::uint32_t>(rotors.size()));
        bool seen = false;
        for (size_t c : chosen)
            seen = seen || c == r;
        if (!seen)
            chosen.push_back(r);
    }
    for (size_t r : chosen)
        key.walzenlage.push_back(rotors[r].name);

    for (int i = 0; i < 3; ++i) {
        key.ringstellung.push_back(random_rings ? latin().letter(static_cast<int>(rng.below(26))) : 'A');
        key.grundstellung.push_back(latin().letter(static_cast<int>(rng.below(26))));
    }

    std::vector<int> letters;
    for (int i = 0; i < 26; ++i)
        letters.push_back(i);
    for (int i = 25; i > 0; --i)
        std::swap(letters[static_cast<size_t>(i)], letters[rng.below(static_cast<std::uint32_t>(i + 1))]);
    for (int p = 0; p < plug_pairs; ++p)
        key.steckerverbindungen.emplace_back(latin().letter(letters[static_cast<size_t>(2 * p)]),
                                             latin().letter(letters[static_cast<size_t>(2 * p + 1)]));
    key.reflector = reflector;
    return key;
}

} // namespace banbury::keysheet
