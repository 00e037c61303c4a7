#pragma once

#include "pwalk/walk.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pwalk::cli {

/// Expression and walk descriptor grammar shown on usage errors.
extern const char* const kGrammar;

/**
 * Walk from a descriptor string:
 *   xyP:<P in z>:<1|2>   bogolubov:<P in y>   unipotent:<matrix>
 *   adjoint:<matrix>     signature:<p>:<q>:<index>   file:<path>
 */
Walk walk_from_descriptor(const std::string& desc);

/// Runs one command line (args[0] is the program name). 0 ok, 2 unresolved, 1 error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace pwalk::cli
