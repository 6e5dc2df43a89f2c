use super::TokenizerConfig;

fn value(c: char) -> Option<u32> {
    Some(match c.to_ascii_lowercase() {
        'i' | 'j' => 1,
        'v' => 5,
        'x' => 10,
        'l' => 50,
        'c' => 100,
        'd' => 500,
        'm' => 1000,
        _ => return None,
    })
}

fn subtractive(a: u32, b: u32) -> bool {
    matches!((a, b), (1, 5) | (1, 10) | (10, 50) | (10, 100) | (100, 500) | (100, 1000))
}

/// One period-delimited group, e.g. `xlviij`. Old-style additive forms
/// (`xiiii`) are accepted; j may only appear in the final run.
fn valid_group(group: &str, allow_j: bool) -> bool {
    let chars: Vec<char> = group.chars().collect();
    if chars.is_empty() {
        return false;
    }
    if let Some(first_j) = chars.iter().position(|c| matches!(c, 'j' | 'J')) {
        if !allow_j || chars[first_j..].iter().any(|c| !matches!(c, 'j' | 'J')) {
            return false;
        }
    }
    let vals: Option<Vec<u32>> = chars.iter().map(|&c| value(c)).collect();
    let Some(vals) = vals else { return false };

    let mut bound = u32::MAX;
    let mut k = 0;
    while k < vals.len() {
        let (token, next_limit) = if k + 1 < vals.len() && vals[k] < vals[k + 1] {
            if !subtractive(vals[k], vals[k + 1]) {
                return false;
            }
            let pair = vals[k + 1] - vals[k];
            k += 2;
            (pair, vals[k - 2] - 1)
        } else {
            k += 1;
            (vals[k - 1], vals[k - 1])
        };
        if token > bound {
            return false;
        }
        bound = next_limit.min(token);
    }
    true
}

/// Whether `token` is a Roman numeral in the dotted style of the period
/// (`.xiiii.C.`, `v.C.xlviij`).
///
/// Bare alphabetic words only qualify when they carry a period or a j-final
/// group, so ordinary words spelled with numeral letters (`civil`, `mix`)
/// are rejected.
pub fn is_roman_numeral(token: &str, cfg: &TokenizerConfig) -> bool {
    let groups: Vec<&str> = token.split('.').filter(|g| !g.is_empty()).collect();
    if groups.is_empty() {
        return false;
    }
    if !groups.iter().all(|g| valid_group(g, cfg.roman_numeral_j_variant)) {
        return false;
    }
    let j_final = cfg.roman_numeral_j_variant
        && groups.iter().any(|g| g.ends_with('j') || g.ends_with('J'));
    token.contains('.') || j_final
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roman(s: &str) -> bool {
        is_roman_numeral(s, &TokenizerConfig::default())
    }

    #[test]
    fn dotted_numerals() {
        assert!(roman(".xiiii.C."));
        assert!(roman("v.C.xlviij"));
        assert!(roman(".xx."));
        assert!(roman("M.D.xlii."));
        assert!(roman("viij"));
    }

    #[test]
    fn ordinary_words() {
        assert!(!roman("civil"));
        assert!(!roman("mix"));
        assert!(!roman("did."));
        assert!(!roman("mild."));
        assert!(!roman("Mr."));
        assert!(!roman("."));
        assert!(!roman("..."));
        assert!(!roman("xi"));
    }

    #[test]
    fn j_variant_flag() {
        let cfg = TokenizerConfig {
            roman_numeral_j_variant: false,
            ..TokenizerConfig::default()
        };
        assert!(!is_roman_numeral("v.C.xlviij", &cfg));
        assert!(!is_roman_numeral("viij", &cfg));
        assert!(is_roman_numeral(".xiiii.C.", &cfg));
    }

    #[test]
    fn group_grammar() {
        assert!(valid_group("mcmxc", false));
        assert!(valid_group("xiiii", false));
        assert!(valid_group("xix", false));
        assert!(!valid_group("vix", false));
        assert!(!valid_group("iji", true));
        assert!(!valid_group("ivi", false));
        assert!(!valid_group("lid", false));
    }
}
