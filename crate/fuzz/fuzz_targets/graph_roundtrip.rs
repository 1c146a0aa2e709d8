#![no_main]

use libfuzzer_sys::fuzz_target;
use probconn::{parse_graph_file, write_graph_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_graph_file(text) else {
        return;
    };
    let written = write_graph_file(&g);
    let back = parse_graph_file(&written).expect("written graphs parse");
    assert_eq!(back, g);
    assert_eq!(write_graph_file(&back), written);
});
