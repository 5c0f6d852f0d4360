#ifndef SYNCHECK_IO_HPP
#define SYNCHECK_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "syncheck/model.hpp"
#include "syncheck/reduce.hpp"

namespace syncheck::io {

// System files: one directive per line, '#' starts a comment.
//   system NAME
//   peers N
//   msg LETTER SRC DST
//   peer I
//   initial STATE
//   STATE !LETTER STATE
//   STATE ?LETTER STATE
//   end
System parse_system(std::string_view text);  // throws ParseError / ValidationError
System load_system(const std::filesystem::path& path);
std::string serialize_system(const System& system);

// FIFO automaton files:
//   fifo NAME
//   alphabet LETTER...
//   initial STATE
//   STATE !LETTER STATE
//   STATE ?LETTER STATE
//   end
reduce::FifoAutomaton parse_fifo(std::string_view text);
reduce::FifoAutomaton load_fifo(const std::filesystem::path& path);
std::string serialize_fifo(const reduce::FifoAutomaton& automaton);

// Tiling instance files:
//   tiling NAME
//   tiles TILE...
//   initial TILE
//   final TILE
//   blank TILE
//   h TILE TILE
//   v TILE TILE
//   end
reduce::TilingInstance parse_tiling(std::string_view text);
reduce::TilingInstance load_tiling(const std::filesystem::path& path);
std::string serialize_tiling(const reduce::TilingInstance& instance);

// Send words print with channel suffixes ("a@1>2") for unambiguity.
std::string format_send_word(const MessageSet& messages, std::span<const LetterId> word);

}  // namespace syncheck::io

#endif
