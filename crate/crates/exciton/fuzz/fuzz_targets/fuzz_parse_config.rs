#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The config parser must reject, never panic, on arbitrary input.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = exciton::report::parse_config_str(text);
    }
});
