#![no_main]

use intbal::{parse_decimal_string, Rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_decimal_string(text) {
        let printed = x.to_string();
        let again: Rational = printed.parse().expect("canonical form re-parses");
        assert_eq!(x, again);
        let frac = x.decimal_part();
        assert!(!frac.is_negative() && frac < Rational::one());
        assert_eq!(Rational::from_integer(x.floor()) + frac, x);
    }
});
