#include "serrewt/cli.hpp"

int main(int argc, char** argv) { return serrewt::run_command(argc, argv); }
