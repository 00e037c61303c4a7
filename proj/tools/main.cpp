#include "pwalk/cli.hpp"

int main(int argc, char** argv) { return pwalk::cli::dispatch(argc, argv); }
