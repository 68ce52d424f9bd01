#include "relay_rgg/cli.hpp"

int main(int argc, char** argv) { return relay_rgg::parse_and_dispatch(argc, argv); }
