#pragma once

#include "banbury/rotor.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace banbury::enigma {

struct RotorSlot {
    RotorSpec spec;
    int ring = 0;
    int position = 0;
};

/// Full machine configuration and rotor positions, as an immutable value:
/// operations return a new state. Rotors are listed left to right; the
/// rightmost one steps on every keypress.
struct MachineState {
    std::vector<RotorSlot> rotors;
    ReflectorSpec reflector;
    Plugboard plugboard;
    /// false (default): step before enciphering, the keypress behaviour.
    /// true: encipher first and step afterwards, matching the narrated traces
    /// of the reduced 6-letter machine.
    bool step_after = false;

    int alphabet_size() const { return reflector.wiring.size(); }
    std::vector<int> positions() const;
    MachineState with_positions(const std::vector<int>& positions) const;
};

MachineState step(const MachineState& state);

/// Advance by n keypresses (n >= 0).
MachineState advance(const MachineState& state, long n);

std::pair<int, MachineState> encipher_letter(const MachineState& state, int letter);
std::pair<std::vector<int>, MachineState> encipher_message(const MachineState& state,
                                                           const std::vector<int>& letters);

/// The monoalphabetic map the machine would apply to the next keypress;
/// always a fixed-point-free involution.
Permutation cipher_alphabet_at(const MachineState& state);

/// The rotor-stack-plus-reflector map at the state's current positions,
/// excluding the plugboard (and without stepping).
Permutation scrambler_at(const MachineState& state);

struct KeyspaceModel {
    int available_rotors = 5;
    int chosen_rotors = 3;
    int plug_pairs = 10;
    int alphabet_size = 26;
};

struct KeyspaceBreakdown {
    unsigned __int128 rotor_orders;
    unsigned __int128 rotor_positions;
    unsigned __int128 ring_settings;
    unsigned __int128 plug_pairings;
    unsigned __int128 total;
};

KeyspaceBreakdown keyspace_size(const KeyspaceModel& model);

std::string to_string(unsigned __int128 value);
double to_double(unsigned __int128 value);

} // namespace banbury::enigma
