use num_bigint::BigInt;

use super::WeierstrassCurve;
use crate::error::Error;

/// The bundled isogeny-class representatives.
pub const BUNDLED_CURVES: &str = include_str!("../../data/curves.txt");

/// Parses lines of the form `label [a1,a2,a3,a4,a6] conductor`.
///
/// Blank lines and `#` comments are skipped. On failure every malformed
/// line is reported, with 1-based line numbers.
pub fn parse_curves(text: &str) -> Result<Vec<WeierstrassCurve>, Vec<Error>> {
    let mut curves = Vec::new();
    let mut errors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match parse_line(line) {
            Ok(c) => curves.push(c),
            Err(reason) => errors.push(Error::Parse { line: idx + 1, reason }),
        }
    }
    if errors.is_empty() {
        Ok(curves)
    } else {
        Err(errors)
    }
}

fn parse_line(line: &str) -> Result<WeierstrassCurve, String> {
    let open = line.find('[').ok_or("missing '['")?;
    let close = line.find(']').ok_or("missing ']'")?;
    if close < open {
        return Err("malformed coefficient list".into());
    }
    let label = line[..open].trim();
    if label.is_empty() || label.contains(char::is_whitespace) {
        return Err("expected a single label before the coefficients".into());
    }
    let coeffs = line[open + 1..close]
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != 5 {
        return Err(format!("expected 5 coefficients, found {}", coeffs.len()));
    }
    let conductor: u64 = line[close + 1..]
        .trim()
        .parse()
        .map_err(|_| format!("bad conductor {:?}", line[close + 1..].trim()))?;
    let a: [BigInt; 5] = coeffs.try_into().expect("length checked");
    WeierstrassCurve::new(label, a, conductor).map_err(|e| e.to_string())
}

pub fn bundled_curves() -> Vec<WeierstrassCurve> {
    parse_curves(BUNDLED_CURVES).expect("bundled curve file is well formed")
}

/// Looks a curve up in the bundled file by exact label, or by class label
/// (`"27a"` finds the first member listed for that class).
pub fn find_curve(label: &str) -> Option<WeierstrassCurve> {
    let curves = bundled_curves();
    if let Some(c) = curves.iter().find(|c| c.label() == label) {
        return Some(c.clone());
    }
    curves.into_iter().find(|c| c.class_label() == label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_line() {
        let curves = parse_curves("27a1 [0,0,1,0,-7] 27\n").unwrap();
        assert_eq!(curves.len(), 1);
        assert_eq!(curves[0].a3(), &BigInt::from(1));
        assert_eq!(curves[0].a6(), &BigInt::from(-7));
        assert_eq!(curves[0].conductor(), 27);
    }

    #[test]
    fn empty_and_comments() {
        assert!(parse_curves("").unwrap().is_empty());
        assert!(parse_curves("# nothing\n\n   \n").unwrap().is_empty());
        let c = parse_curves("11a1 [0,-1,1,-10,-20] 11 # trailing\n").unwrap();
        assert_eq!(c[0].label(), "11a1");
    }

    #[test]
    fn reports_every_bad_line() {
        let text = "27a1 [0,0,1] 27\n27a1 [0,0,1,0,-7] 27\nbad [0,0,0,0,0] 1\nx [0,0,0,1,0]\n";
        let errs = parse_curves(text).unwrap_err();
        assert_eq!(errs.len(), 3);
        match &errs[0] {
            Error::Parse { line, reason } => {
                assert_eq!(*line, 1);
                assert!(reason.contains("expected 5 coefficients"));
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(errs[1], Error::Parse { line: 3, .. }));
        assert!(matches!(errs[2], Error::Parse { line: 4, .. }));
    }

    #[test]
    fn bundled_file_is_sane() {
        let curves = bundled_curves();
        assert!(curves.len() >= 10);
        for c in &curves {
            // conductor divides a power of the discriminant's support
            let disc = c.discriminant();
            for p in crate::exactnum::primes::prime_factors(c.conductor()) {
                assert!(
                    (&disc % BigInt::from(p)) == BigInt::from(0),
                    "{} has conductor prime {p} not dividing the discriminant",
                    c.label()
                );
            }
        }
        assert!(find_curve("27a").is_some());
        assert!(find_curve("nope").is_none());
    }
}
