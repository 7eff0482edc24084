#include "egonet/io.hpp"

int main(int argc, char** argv) { return egonet::io::cli_main(argc, argv); }
