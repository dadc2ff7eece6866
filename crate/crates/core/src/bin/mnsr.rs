fn main() {
    mnsemiring::cli::main()
}
