#pragma once

namespace treeprop::cli {

// Exit codes: 0 yes/ok, 1 verified no, 2 usage or input error, 3 budget exceeded.
int run(int argc, char** argv);

}  // namespace treeprop::cli
