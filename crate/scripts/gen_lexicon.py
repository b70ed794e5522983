#!/usr/bin/env python3
"""Regenerate the bundled lexicon data files under crates/core/data/.

Word lists are curated for requirements / user-story English. Inflected
forms are generated with the usual English spelling rules plus an
irregular-form table. Frequencies come from the `wordfreq` package
(occurrences per 100 million words, floor 1) and are only used to rank
spelling-correction candidates.

    pip install wordfreq
    python3 scripts/gen_lexicon.py
"""

import os
import sys

from wordfreq import word_frequency

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")

VERBS = """
accept access accompany achieve acknowledge acquire activate adapt add address adjust administer admit adopt
advertise advise affect agree aim alert allocate allow alter analyse analyze announce annotate answer apologize
appear append apply appoint appreciate approve archive argue arrange arrest arrive ask assemble assess assign
assist associate assume attach attempt attend audit authenticate authorize automate avoid award back bake ban
bank bargain base bill bind block board boil book bookmark borrow bounce box brand break browse budget bug
build bundle burn buy calculate calibrate call cancel capture care carry cash catalog catalogue categorize
cause celebrate certify chain challenge change charge chat check checkout choose claim clarify classify clean
clear click climb clip close coach code collaborate collect combine comment commit communicate compare compete
compile complain complete comply compose compute concentrate conclude conduct configure confirm connect
consider consolidate construct consult consume contact contain continue contribute control convert cook
coordinate copy correct cost count cover crash create credit cross customize cut damage deactivate deal debit
debug decide declare decline decrease dedicate deduct default defend define delay delegate delete deliver
demand demonstrate deny depart depend deploy deposit describe design detect determine develop diagnose dial
die dine direct disable disagree disapprove discount discover discuss dismiss dispatch dispense display dispose dispute
distribute divide document donate download draft drag drink drive drop duplicate earn edit educate elect email
embed employ empty enable encourage encrypt end endorse enforce engage enhance enjoy enroll enrol ensure enter
equip erase escalate establish estimate evaluate examine exchange exclude execute exercise exit expand expect
expire explain explore export expose extend extract fail fax feature fetch file fill filter finalize finance
find finish fire fix flag focus fold follow force forecast forget format forward free fund gain gather
generate get give go grade grant greet guarantee guide handle hang happen hate head heal help hire hold host
identify ignore illustrate implement import improve include increase indicate inform initiate input inquire
insert inspect install instruct insure integrate intend interact interview introduce invest investigate
invite invoice involve issue join judge jump keep kick kill know label land last launch learn lease leave lend
let license lift like limit link list listen live load loan locate lock log login look lose love mail maintain
make manage manufacture map mark market match measure meet mention merge message migrate mind miss mix modify
monitor move multiply name navigate need negotiate nominate note notify obtain occupy offer open operate
order organise organize oversee own pack package paint park participate pass paste pay perform permit persist
pick pin place plan plant play point populate post postpone practice practise predict prefer prepare prescribe
present preserve press prevent preview price print prioritize process procure produce program promote prompt
propose protect prove provide publish pull purchase push put qualify query question queue quit quote raise
rank rate reach react read realize reboot receive recharge recommend reconcile record recover recruit redeem
redirect reduce refer refill refund refuse register reimburse reject relate release reload remain remember
remind remove rename renew rent reopen reorder repair repeat replace reply report represent request require
reschedule rescue research reserve reset resign resolve respond rest restart restore restrict resubmit resume
retain retrieve return reuse review revise revoke reward ride ring rotate route run save scan schedule score
screen search seat secure see select sell send serve service set settle share ship shop shortlist show sign
simulate sit skip sleep solve sort speak specify spend split sponsor staff stamp stand star start state stay
steal step stock stop store stream submit subscribe subtract suggest summarize supervise supply support
suspend swap switch sync synchronize tag take talk target teach tell terminate test text thank think tick
track trade train transcribe transfer translate transmit transport travel treat trigger trust try turn tweet
type undo unlock unsubscribe update upgrade upload use validate value verify view visit vote wait walk want
warn wash watch water wear weigh welcome win wish withdraw work worry wrap write
""".split()

# Base forms that are also nouns but whose bare form is mostly a noun.
NOUN_FIRST = set("""
time name date file note book list number water card cost light value state point
feature head land fund mind market program quote rest staff star step tag text type
""".split())

NOUNS = """
ability absence academy access account accountant accuracy achievement acknowledgement action activity actor
address adjustment admin administrator admission advertisement advice agency agenda agent agreement airline
airport alarm alert algorithm allergy allowance amount analysis analyst announcement answer app appeal
applicant application appointment approval archive area argument arrival article artist assessment asset
assignment assistant attachment attempt attendance attendee attendant auction audience audit auditor author
authority availability average award backup badge baggage bag balance ban band bank banner bar barcode base
basket batch bed behavior benefit bid bill biography birthday block blog board boarding body bonus book
booking bookmark borrower boss bottle box branch brand break breakfast bug budget buffer builder building
bundle bus business button buyer cabin cafe calendar call campaign campus cancellation candidate capacity car
card care career cart case cash cashier catalog catalogue category certificate chair change channel chapter
charge chart chat check checklist checkout chef child choice citizen city claim class classroom clerk client
clinic club coach code colleague collection college comment commission committee company complaint component
computer concert condition conference confirmation connection consultant consultation contact content context
contract contractor contribution control cook copy corner cost counter country coupon course court cover
credential credit crew criteria criterion currency customer cycle damage dashboard data database date day
deadline dealer debit debt decision default degree delay delivery demand demo department departure deposit
description design designer desk destination detail developer device diagnosis diet difference dinner
director discount discussion dish display distance doctor document documentation donation donor door draft
driver drug due duty editor education election electrician element email employee employer end engineer
enquiry enrollment enrolment entry environment equipment error estimate event evidence exam examination
example exception exchange expense experience expert expiry export facility factory failure family fare farmer
favorite fault feature fee feedback field figure file filter finance fine flight floor flow folder food form
format forum friend front fuel function fund game garage gate goal good grade graduate grant graph group
guardian guest guide gym hall hardware head health help history holder holiday home hospital host hotel hour
house household housekeeper id idea identity image import incident income inquiry inspection inspector
instructor insurance interface interview inventory investor invitation invoice issue item job journal judge
key keyword kitchen lab label laboratory landlord language laptop lawyer leader lease leave lecture lecturer
ledger lesson letter level librarian library licence license light limit line link list listing loan location
lock log login loss lunch machine mail manager manual map market material meal mechanic medication medicine
meeting member membership menu merchant message method microphone milestone minute mobile mode model module
moment month movie name network news newsletter night note notice notification number nurse object offer
office officer oil operation operator opportunity option order organisation organization organizer outcome
output owner package page pain parcel parent park parking part participant partner party passenger passport password
patient pay payment payroll pension period permission permit person pharmacist pharmacy phone photo
photographer physician picture pilot pizza place plan platform player point police policy portal position post
practice prescription presentation price principal printer priority problem procedure process product
profile professor program progress project promotion property proposal provider publisher purchase purpose
qualification quality quantity query question queue quiz quota quote rate rating reader reason receipt
receptionist recipe recipient recommendation record recruiter refund region registrar registration reminder
rent rental repair replacement reply report repository representative request requirement research
reservation resident resource response rest restaurant result resume retailer return review reviewer reward
risk role room route rule salary sale salesperson sample schedule scheme school score screen search season
seat secretary section security seller semester seminar sender server service session setting shelf shift
shipment shop shopper sign signature site size skill slot software solution source space speaker
specification staff stage standard star state statement station status step stock storage store story student
subject submission subscriber subscription summary supervisor supplier supply support surgeon survey system
table tag target task tax taxi teacher team technician template tenant term test text thing thread ticket
time timetable tip title token tool topic total tour tourist track trade trainee trainer training transaction
transcript transfer transport travel traveler traveller treatment trip truck tutor type unit university update
upgrade upload usage user vacancy vehicle vendor venue version video view viewer visit visitor volunteer
voucher wage waiter waitress wallet warehouse warning warranty water way website week weekend window worker
workflow workshop year
""".split()

IRREGULAR_PLURALS = {
    "child": "children", "person": "people", "man": "men", "woman": "women", "foot": "feet",
    "tooth": "teeth", "criterion": "criteria", "datum": None, "analysis": "analyses", "shelf": "shelves",
    "life": "lives", "knife": "knives", "half": "halves", "wife": "wives", "leaf": "leaves",
    "thief": "thieves", "mouse": "mice",
}

UNCOUNTABLE = set("""
access advice availability baggage data education equipment feedback food fuel furniture health help
history information insurance inventory luggage mail money news oil payroll research security software
staff storage support transport travel usage water weather
""".split())

ADJECTIVES = """
able absent academic accurate active actual additional administrative advanced affordable alternative annual
anonymous appropriate approved archived assigned automatic available average bad basic beautiful big blank
blue bright broken busy cancelled careful central certain cheap clean clear closed cold comfortable commercial
common complete complex confidential correct current daily damaged dangerous dark dead default delivered
detailed different difficult digital direct dirty due early easy electronic eligible empty entire essential
exact excellent existing expensive expired external extra fair false familiar fast favorite final financial
fine first flexible following foreign formal former free frequent fresh friendly full general global good
great green happy hard healthy heavy helpful high historical hot huge important inactive incorrect individual
initial internal international invalid key large last late latest legal light little live local long
low main major manual maximum medical minimum missing mobile modern monthly multiple national natural
nearby necessary negative new next nice normal official old online open optional original other outstanding
overdue paid partial past pending personal physical popular positive possible potential previous primary
private proper public quick quiet ready real recent red regular relevant remote required responsible right
safe same scheduled secondary secure selected senior separate serious several short sick significant similar
simple single slow small smart social special specific standard strong successful sufficient suitable
technical temporary total true typical unable unavailable unique unpaid upcoming urgent useful valid various
verified virtual visible weekly whole wide wrong yearly young
""".split()

COMPARATIVES = {
    "big": ("bigger", "biggest"), "cheap": ("cheaper", "cheapest"), "clean": ("cleaner", "cleanest"),
    "early": ("earlier", "earliest"), "easy": ("easier", "easiest"), "fast": ("faster", "fastest"),
    "great": ("greater", "greatest"), "hard": ("harder", "hardest"), "high": ("higher", "highest"),
    "large": ("larger", "largest"), "late": ("later", "latest"), "long": ("longer", "longest"),
    "low": ("lower", "lowest"), "new": ("newer", "newest"), "old": ("older", "oldest"),
    "quick": ("quicker", "quickest"), "safe": ("safer", "safest"), "short": ("shorter", "shortest"),
    "simple": ("simpler", "simplest"), "slow": ("slower", "slowest"), "small": ("smaller", "smallest"),
    "strong": ("stronger", "strongest"), "young": ("younger", "youngest"), "close": ("closer", "closest"),
}

ADVERBS = """
again ago almost already also always anywhere automatically away back currently daily directly
easily else even ever finally first hence here however immediately instead just later manually monthly
never next not now often once online only perhaps please quickly rather really recently regularly
securely simply sometimes soon still then there therefore thus today together tomorrow too usually very
weekly well yesterday yet
""".split()

IRREGULAR_VERBS = [
    # base, past, participle
    ("be", "was", "been"), ("become", "became", "become"), ("begin", "began", "begun"),
    ("bind", "bound", "bound"), ("break", "broke", "broken"), ("bring", "brought", "brought"),
    ("build", "built", "built"), ("burn", "burnt", "burnt"), ("buy", "bought", "bought"),
    ("catch", "caught", "caught"), ("choose", "chose", "chosen"), ("come", "came", "come"),
    ("cost", "cost", "cost"), ("cut", "cut", "cut"), ("deal", "dealt", "dealt"), ("do", "did", "done"),
    ("draw", "drew", "drawn"), ("drink", "drank", "drunk"), ("drive", "drove", "driven"),
    ("eat", "ate", "eaten"), ("fall", "fell", "fallen"), ("feel", "felt", "felt"),
    ("find", "found", "found"), ("fly", "flew", "flown"), ("forget", "forgot", "forgotten"),
    ("freeze", "froze", "frozen"), ("get", "got", "gotten"), ("give", "gave", "given"),
    ("go", "went", "gone"), ("grow", "grew", "grown"), ("hang", "hung", "hung"),
    ("have", "had", "had"), ("hear", "heard", "heard"), ("hide", "hid", "hidden"),
    ("hold", "held", "held"), ("keep", "kept", "kept"), ("know", "knew", "known"),
    ("lead", "led", "led"), ("leave", "left", "left"), ("lend", "lent", "lent"), ("let", "let", "let"),
    ("lose", "lost", "lost"), ("make", "made", "made"), ("mean", "meant", "meant"),
    ("meet", "met", "met"), ("pay", "paid", "paid"), ("put", "put", "put"), ("quit", "quit", "quit"),
    ("read", "read", "read"), ("rebuild", "rebuilt", "rebuilt"), ("ride", "rode", "ridden"),
    ("ring", "rang", "rung"), ("rise", "rose", "risen"), ("run", "ran", "run"), ("say", "said", "said"),
    ("see", "saw", "seen"), ("sell", "sold", "sold"), ("send", "sent", "sent"), ("set", "set", "set"),
    ("shake", "shook", "shaken"), ("show", "showed", "shown"), ("shut", "shut", "shut"),
    ("sit", "sat", "sat"), ("sleep", "slept", "slept"), ("speak", "spoke", "spoken"),
    ("spend", "spent", "spent"), ("split", "split", "split"), ("stand", "stood", "stood"),
    ("steal", "stole", "stolen"), ("take", "took", "taken"), ("teach", "taught", "taught"),
    ("tell", "told", "told"), ("think", "thought", "thought"), ("throw", "threw", "thrown"),
    ("understand", "understood", "understood"), ("undo", "undid", "undone"), ("upset", "upset", "upset"),
    ("wear", "wore", "worn"), ("win", "won", "won"), ("withdraw", "withdrew", "withdrawn"),
    ("write", "wrote", "written"), ("overwrite", "overwrote", "overwritten"),
    ("oversee", "oversaw", "overseen"), ("rewrite", "rewrote", "rewritten"), ("hit", "hit", "hit"),
]
EXTRA_IRREGULAR_BASES = {"understand", "mean", "drink", "hit", "shut", "rebuild", "overwrite", "rewrite", "upset", "be",
                         "become", "come", "fall", "grow", "hear", "rise", "shake", "throw", "eat", "draw", "hide", "bring", "feel", "freeze", "fly", "lead", "have", "do", "catch", "begin"}

# Verbs whose final consonant doubles before -ed/-ing.
DOUBLING = set("""
ban bid chat clip commit control cut drag drop embed equip fit flag get hit jog label log map mop occur
pin plan prefer put quit refer regret run scan set ship shop shut sit skip slip split star step stop
submit swap tag transfer transmit upset win wrap
""".split())

# British-style doubling (cancelled, travelled, labelled) is also accepted.
L_DOUBLING = set("cancel travel label model signal total fuel".split())

CLOSED = {
    "DET": "a an the this that these those my your his her its our their each every some any no all both "
           "either neither another such whose".split(),
    "PRON": "i you he she it we they me him us them myself yourself himself herself itself ourselves "
            "themselves who whom which what whoever someone somebody anyone anybody everyone everybody "
            "something anything everything nothing nobody none one mine yours hers ours theirs".split(),
    "ADP": "of in on at for with by from to into onto about above after against along among around "
           "as before behind below beneath beside besides between beyond despite down during except "
           "inside like near off out outside over past per since through throughout toward towards "
           "under underneath unlike until up upon via within without".split(),
    "CONJ": "and or but nor so yet if when while because although though unless whereas whether "
            "then than once after".split(),
    "AUX": "am is are was were be been being do does did can could will would shall should may might "
           "must has have had don't doesn't didn't can't cannot won't wouldn't shouldn't couldn't "
           "isn't aren't wasn't weren't".split(),
    "NUM": "zero one two three four five six seven eight nine ten eleven twelve twenty thirty hundred "
           "thousand million first second third".split(),
    "INTJ": "yes hello hi oh ok okay please thanks".split(),
}
# Words where the closed-class reading should win but which also exist elsewhere.
CLOSED_OVERRIDES = {"one": "NUM", "after": "ADP", "like": "VERB", "first": "ADJ", "once": "ADV",
                    "please": "INTJ", "have": "VERB", "has": "VERB", "had": "VERB", "second": "NUM",
                    "that": "DET", "past": "ADJ", "then": "ADV", "down": "ADV", "up": "ADP",
                    "out": "ADP", "off": "ADP", "so": "CONJ", "yet": "ADV"}

ABBREVIATIONS = """
mr. mrs. ms. dr. prof. sr. jr. st. e.g. i.e. etc. vs. inc. ltd. co. corp. dept. approx. no. fig. jan.
feb. mar. apr. jun. jul. aug. sep. sept. oct. nov. dec. mon. tue. wed. thu. fri. sat. sun. a.m. p.m.
u.s. u.k. ave. est. min. max. ref.
""".split()


def is_vowel(c):
    return c in "aeiou"


def third_person(v):
    if v.endswith(("s", "x", "z", "ch", "sh")) or v in ("go", "do", "undo", "veto"):
        return v + "es"
    if v.endswith("y") and len(v) > 1 and not is_vowel(v[-2]):
        return v[:-1] + "ies"
    return v + "s"


def doubles(v):
    return v in DOUBLING or v in L_DOUBLING


def past(v):
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and not is_vowel(v[-2]):
        return v[:-1] + "ied"
    if doubles(v):
        return v + v[-1] + "ed"
    return v + "ed"


def gerund(v):
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not v.endswith(("ee", "ye", "oe")) and v != "be":
        return v[:-1] + "ing"
    if doubles(v):
        return v + v[-1] + "ing"
    return v + "ing"


def plural(n):
    if n in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[n]
    if n in UNCOUNTABLE:
        return None
    if n.endswith(("s", "x", "z", "ch", "sh")):
        return n + "es"
    if n.endswith("y") and not is_vowel(n[-2]):
        return n[:-1] + "ies"
    return n + "s"


def main():
    tags = {}  # word -> ordered list of tags (first = most frequent)
    exceptions = []  # (word, pos, lemma)

    def add(word, tag, front=False):
        lst = tags.setdefault(word, [])
        if tag in lst:
            if front:
                lst.remove(tag)
                lst.insert(0, tag)
            return
        if front:
            lst.insert(0, tag)
        else:
            lst.append(tag)

    verbs = sorted(set(VERBS) | EXTRA_IRREGULAR_BASES)
    nouns = set(NOUNS)
    irregular = {b: (p, pp) for b, p, pp in IRREGULAR_VERBS}

    for v in verbs:
        if v == "be":
            continue
        noun_first = v in NOUN_FIRST and v in nouns
        if noun_first:
            add(v, "NOUN")
        add(v, "VERB")
        add(third_person(v), "VERB")
        add(gerund(v), "VERB")
        if v in irregular:
            p, pp = irregular[v]
            for form in {p, pp}:
                add(form, "VERB")
                if form != v:
                    exceptions.append((form, "VERB", v))
        else:
            add(past(v), "VERB")
            if v in L_DOUBLING:
                add(v + "led", "VERB")
                add(v + "ling", "VERB")
                exceptions.append((v + "led", "VERB", v))
                exceptions.append((v + "ling", "VERB", v))
        if v in ("go", "do", "undo"):
            exceptions.append((third_person(v), "VERB", v))

    irregular_plurals = set(IRREGULAR_PLURALS.values())
    for n in sorted(nouns):
        add(n, "NOUN")
        pl = None if n in irregular_plurals else plural(n)
        if pl:
            add(pl, "NOUN")
            if n in IRREGULAR_PLURALS:
                exceptions.append((pl, "NOUN", n))

    for a in ADJECTIVES:
        add(a, "ADJ")
    for a, (c, s) in COMPARATIVES.items():
        add(a, "ADJ")
        add(c, "ADJ")
        add(s, "ADJ")
    for a in ADVERBS:
        add(a, "ADV")

    exceptions += [
        ("better", "ADJ", "good"), ("best", "ADJ", "good"), ("worse", "ADJ", "bad"),
        ("worst", "ADJ", "bad"), ("better", "ADV", "well"), ("best", "ADV", "well"),
        ("more", "ADJ", "many"), ("most", "ADJ", "many"), ("less", "ADJ", "little"),
        ("least", "ADJ", "little"), ("further", "ADJ", "far"), ("farther", "ADJ", "far"),
        ("is", "AUX", "be"), ("are", "AUX", "be"), ("was", "AUX", "be"), ("were", "AUX", "be"),
        ("am", "AUX", "be"), ("been", "AUX", "be"), ("being", "AUX", "be"),
        ("does", "AUX", "do"), ("did", "AUX", "do"), ("done", "AUX", "do"),
        ("has", "AUX", "have"), ("had", "AUX", "have"), ("has", "VERB", "have"),
        ("news", "NOUN", "news"), ("data", "NOUN", "data"), ("status", "NOUN", "status"),
        ("series", "NOUN", "series"), ("species", "NOUN", "species"), ("analyses", "NOUN", "analysis"),
        ("went", "VERB", "go"), ("bought", "VERB", "buy"), ("made", "VERB", "make"),
        ("media", "NOUN", "medium"), ("children", "NOUN", "child"), ("people", "NOUN", "person"),
        ("needs", "NOUN", "need"), ("left", "ADJ", "left"),
    ]
    for word, tag in (("better", "ADJ"), ("best", "ADJ"), ("worse", "ADJ"), ("worst", "ADJ"),
                      ("more", "ADJ"), ("most", "ADJ"), ("less", "ADJ"), ("least", "ADJ"),
                      ("further", "ADJ"), ("media", "NOUN"), ("series", "NOUN"), ("status", "NOUN"),
                      ("better", "ADV")):
        add(word, tag)

    closed = {}
    for tag, words in CLOSED.items():
        for w in words:
            closed.setdefault(w, tag)
    for w, tag in CLOSED_OVERRIDES.items():
        if w in closed:
            closed[w] = tag
    # Open-class readings of words the closed table also covers stay in the lexicon
    # tag column; closed_class wins during tagging.
    for w, tag in closed.items():
        if tag in ("VERB", "ADJ", "ADV"):
            add(w, tag, front=True)
    for w in list(closed):
        if closed[w] in ("VERB", "ADJ", "ADV"):
            del closed[w]

    entries = set(tags) | set(closed)
    os.makedirs(OUT, exist_ok=True)

    def freq(w):
        return max(1, round(word_frequency(w, "en") * 1e8))

    with open(os.path.join(OUT, "lexicon.tsv"), "w") as f:
        f.write("# word\tfrequency\ttags (most frequent first; empty for closed-class words)\n")
        for w in sorted(entries):
            assert w == w.lower() and w and " " not in w, w
            f.write(f"{w}\t{freq(w)}\t{','.join(tags.get(w, []))}\n")
    with open(os.path.join(OUT, "closed_class.tsv"), "w") as f:
        f.write("# word\tTAG\n")
        for w in sorted(closed):
            f.write(f"{w}\t{closed[w]}\n")
    seen = set()
    with open(os.path.join(OUT, "exceptions.tsv"), "w") as f:
        f.write("# word\tpos\tlemma\n")
        for w, p, l in sorted(exceptions):
            if (w, p) in seen:
                continue
            seen.add((w, p))
            f.write(f"{w}\t{p}\t{l}\n")
    with open(os.path.join(OUT, "abbreviations.txt"), "w") as f:
        f.write("# one abbreviation per line, lowercase, including the final period\n")
        for a in ABBREVIATIONS:
            f.write(a + "\n")
    print(f"{len(entries)} entries, {len(closed)} closed-class, {len(seen)} exceptions", file=sys.stderr)


if __name__ == "__main__":
    main()
