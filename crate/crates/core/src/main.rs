fn main() {
    spectral_weyl::cli::main()
}
