#![no_main]

use libfuzzer_sys::fuzz_target;
use qid_core::expr::parse_expr;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_expr(text) {
        // Anything that parses must survive a render/parse round trip.
        let again = parse_expr(&p.to_string()).expect("rendered polynomial parses");
        assert_eq!(again, p);
    }
});
