#![no_main]

use libfuzzer_sys::fuzz_target;
use qid_core::ExactRational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = text.parse::<ExactRational>() {
        let again: ExactRational = r.to_string().parse().expect("rendered rational parses");
        assert_eq!(again, r);
    }
});
