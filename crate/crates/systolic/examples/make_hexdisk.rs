//! Prints the facet list of a hexagonal-plane truncation, for feeding into
//! the CLI: `cargo run -p systolic --example make_hexdisk -- 2 > hexdisk2.facets`

use systolic::{hex_plane_generator, io, ComplexGenerator};

fn main() {
    let radius: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let (disk, _) = hex_plane_generator().produce(radius).unwrap();
    print!("{}", io::facets_to_text(&disk));
}
