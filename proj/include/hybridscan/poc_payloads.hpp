/**
 * poc_payloads.hpp — reconstructed proof-of-concept payload texts.
 *
 * Two canonical attack strings used as inert regression fixtures: one
 * exfiltrates the contact list through the bridge, one watches the
 * device position. They are data for the emulator and tests; nothing in
 * this codebase ever executes them. Both are single-line normalizations
 * with the onerror handler quote-wrapped so the markup survives parsing.
 */
#pragma once

#include <string_view>

namespace hybridscan {

std::string_view poc_contacts_exfiltration();
std::string_view poc_geolocation_watch();

}  // namespace hybridscan
