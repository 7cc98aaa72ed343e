#include "egcluster_app.hpp"

int main(int argc, char** argv) { return egnet::cli::main(argc, argv); }
