#pragma once

#include "banbury/machine.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace banbury::keysheet {

/// One line of a daily key sheet: which rotors in which order, ring letters,
/// the day's ground setting and the plug pairs.
struct DailyKey {
    std::vector<std::string> walzenlage; // left to right
    std::string ringstellung;            // one letter per rotor
    std::string grundstellung;           // one letter per rotor
    std::vector<std::pair<char, char>> steckerverbindungen;
    std::string reflector = "B";
};

DailyKey parse_daily_key(std::string_view text);
std::string serialize_daily_key(const DailyKey& key);
DailyKey load_daily_key(const std::string& path);
void store_daily_key(const std::string& path, const DailyKey& key);

/// Machine built from the sheet with rotors set to `positions`.
enigma::MachineState machine_for(const DailyKey& key, const enigma::Catalogue& catalogue,
                                 std::string_view positions);

struct Intercept {
    std::string id;
    std::string timestamp;
    std::string indicator; // 3 letters, 6 when doubled
    std::string body;
    bool doubled = false;
};

/// Encipher one message: the indicator carries the message key enciphered at
/// the Grundstellung (twice when `doubled`, the pre-1942 confirmation), the
/// body is enciphered with the rotors set to the message key.
Intercept transmit(const DailyKey& key, const enigma::Catalogue& catalogue,
                   std::string_view message_key, std::string_view plaintext,
                   bool doubled = false, std::string id = "", std::string timestamp = "");

/// Inverse of transmit under the same DailyKey. Throws "indicator mismatch"
/// if the halves of a doubled indicator disagree after deciphering.
std::string receive(const DailyKey& key, const enigma::Catalogue& catalogue,
                    const Intercept& intercept);

std::vector<Intercept> load_corpus(const std::string& path);
void store_corpus(const std::string& path, const std::vector<Intercept>& corpus);

} // namespace banbury::keysheet
