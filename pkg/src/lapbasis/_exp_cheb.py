"""Partial-fraction tables for the rational approximation of exp(-s).

Generated by tools/gen_exp_cheb_table.py; do not edit by hand.
Each entry maps degree r to (alpha0, ((alpha, beta), ...)) where the
approximation is alpha0 + sum alpha/(1 + beta*s), poles in exact
conjugate pairs.  SUP_ERROR records the verified uniform error of
each degree over a dense log grid on [0, 1e4]."""

TABLE = {
    3: (-0.0008018969162601168, (
        ((1.0839756991101126+0j), (0.7305650939383769+0j)),
        ((-0.04118638984778462-0.2833075170626424j), (0.03387174947385375+0.4120383814380253j)),
        ((-0.04118638984778462+0.2833075170626424j), (0.03387174947385375-0.4120383814380253j)),
    )),
    4: (8.647319306044469e-05, (
        ((0.6196998776215688-0.7533484179409424j), (0.4055535178543038+0.3121602878005095j)),
        ((0.6196998776215688+0.7533484179409424j), (0.4055535178543038-0.3121602878005095j)),
        ((-0.11978635616129353-0.03210775054851558j), (-0.02721252296107045+0.2706271526474615j)),
        ((-0.11978635616129353+0.03210775054851558j), (-0.02721252296107045-0.2706271526474615j)),
    )),
    5: (-9.343703210770628e-06, (
        ((1.5179516245366138+0j), (0.4639479309859903+0j)),
        ((-0.22897665652867505-0.64352579164141j), (0.18419950044916242+0.30648662510434155j)),
        ((-0.22897665652867505+0.64352579164141j), (0.18419950044916242-0.30648662510434155j)),
        ((-0.029989812146225286+0.042185959732622354j), (-0.041086192056263945+0.19451636395917787j)),
        ((-0.029989812146225286-0.042185959732622354j), (-0.041086192056263945-0.19451636395917787j)),
    )),
    6: (1.0085249898973902e-06, (
        ((0.9051466136610438-1.3358858974168646j), (0.3340456366035571+0.16602480689824578j)),
        ((0.9051466136610438+1.3358858974168646j), (0.3340456366035571-0.16602480689824578j)),
        ((-0.4174286219121741-0.04962798131797523j), (0.08040576315871976+0.25087212847244184j)),
        ((-0.4174286219121741+0.04962798131797523j), (0.08040576315871976-0.25087212847244184j)),
        ((0.012280999750206429+0.017020253777170563j), (-0.04286485143147944+0.14905405938695074j)),
        ((0.012280999750206429-0.017020253777170563j), (-0.04286485143147944-0.14905405938695074j)),
    )),
    7: (-1.0875192673118596e-07, (
        ((2.4438588538738806+0j), (0.34000919946601976+0j)),
        ((-0.609147790610653-1.245527803939032j), (0.2089237974747347+0.20632284910408305j)),
        ((-0.609147790610653+1.245527803939032j), (0.2089237974747347-0.20632284910408305j)),
        ((-0.12068559623457535+0.2052262394506178j), (0.03152156715551764+0.20152681175957676j)),
        ((-0.12068559623457535-0.2052262394506178j), (0.03152156715551764-0.20152681175957676j)),
        ((0.007904068660179127-0.002582783494034785j), (-0.0411461874449972+0.1195056001205433j)),
        ((0.007904068660179127+0.002582783494034785j), (-0.0411461874449972-0.1195056001205433j)),
    )),
    8: (1.172256155629675e-08, (
        ((1.4636556317767369-2.4149929540765394j), (0.2729795976064269+0.10116092475735751j)),
        ((1.4636556317767369+2.4149929540765394j), (0.2729795976064269-0.10116092475735751j)),
        ((-1.041037243127626-0.013864806353321452j), (0.1258097688610253+0.19762783206766132j)),
        ((-1.041037243127626+0.013864806353321452j), (0.1258097688610253-0.19762783206766132j)),
        ((0.07744580296919265+0.10057774247334238j), (0.007271013255142757+0.16409654375357954j)),
        ((0.07744580296919265-0.10057774247334238j), (0.007271013255142757-0.16409654375357954j)),
        ((-6.420334091081413e-05-0.003231333078345126j), (-0.03847792877974021+0.09903602378870154j)),
        ((-6.420334091081413e-05+0.003231333078345126j), (-0.03847792877974021-0.09903602378870154j)),
    )),
    9: (-1.2632964212431873e-09, (
        ((4.232698319077112+0j), (0.26835260513253545+0j)),
        ((-1.3706298783697646-2.3614937564530614j), (0.1983225130028637+0.14286206883298372j)),
        ((-1.3706298783697646+2.3614937564530614j), (0.1983225130028637-0.14286206883298372j)),
        ((-0.3063297281410716+0.6418271778154281j), (0.07476555088546294+0.175841901564823j)),
        ((-0.3063297281410716-0.6418271778154281j), (0.07476555088546294-0.175841901564823j)),
        ((0.06180311413256786-0.01873496235421882j), (-0.0053114705970539475+0.1362416976696628j)),
        ((0.06180311413256786+0.01873496235421882j), (-0.0053114705970539475-0.1362416976696628j)),
        ((-0.0011926658969910573-0.0003249896462656885j), (-0.03569579800862377+0.08414882965952618j)),
        ((-0.0011926658969910573+0.0003249896462656885j), (-0.03569579800862377-0.08414882965952618j)),
    )),
    10: (1.3611078930608755e-10, (
        ((2.523997718667017-4.479271570209024j), (0.22822702017468782+0.06764853769847085j)),
        ((2.523997718667017+4.479271570209024j), (0.22822702017468782-0.06764853769847085j)),
        ((-2.323445996016085+0.14257155677576683j), (0.13853948751709505+0.1516449370187796j)),
        ((-2.323445996016085-0.14257155677576683j), (0.13853948751709505-0.1516449370187796j)),
        ((0.29805356619512446+0.34017622899100186j), (0.04352568247243982+0.1532283080600527j)),
        ((0.29805356619512446-0.34017622899100186j), (0.04352568247243982-0.1532283080600527j)),
        ((0.0016360630266486309-0.031589346652826714j), (-0.012011288359945022+0.11526098882785424j)),
        ((0.0016360630266486309+0.031589346652826714j), (-0.012011288359945022-0.11526098882785424j)),
        ((-0.00024135200881605267+0.00039904859319446446j), (-0.03307775823037335+0.07290267887481809j)),
        ((-0.00024135200881605267-0.00039904859319446446j), (-0.03307775823037335-0.07290267887481809j)),
    )),
    11: (-1.4666512713327643e-11, (
        ((7.668557764154754+0j), (0.2216497646146188+0j)),
        ((-2.9141854282045747-4.505224748354964j), (0.18035191870721784+0.10322615751548063j)),
        ((-2.9141854282045747+4.505224748354964j), (0.18035191870721784-0.10322615751548063j)),
        ((-0.6631412916756958+1.6797189123085028j), (0.0953927319131988+0.14577782606784617j)),
        ((-0.6631412916756958-1.6797189123085028j), (0.0953927319131988-0.14577782606784617j)),
        ((0.25683878623745116-0.08882707183394031j), (0.024060655822808173+0.13323844117385256j)),
        ((0.25683878623745116+0.08882707183394031j), (0.024060655822808173-0.13323844117385256j)),
        ((-0.013910153749245306-0.005644990080676281j), (-0.015580846083787757+0.09914468250082197j)),
        ((-0.013910153749245306+0.005644990080676281j), (-0.015580846083787757-0.09914468250082197j)),
        ((0.00011920532935250525+0.0001265717218192647j), (-0.0307038751140918+0.06414582591213559j)),
        ((0.00011920532935250525-0.0001265717218192647j), (-0.0307038751140918-0.06414582591213559j)),
    )),
    12: (1.5870148564678594e-12, (
        ((4.544078495395978-8.490137909034157j), (0.1952055886462445+0.048280352039343624j)),
        ((4.544078495395978+8.490137909034157j), (0.1952055886462445-0.048280352039343624j)),
        ((-4.959320526825719+0.5774364576785869j), (0.1375170913123701+0.1174033019099488j)),
        ((-4.959320526825719-0.5774364576785869j), (0.1375170913123701-0.1174033019099488j)),
        ((0.9137213388045533+0.9260134275983467j), (0.06524400837504042+0.13454878013256683j)),
        ((0.9137213388045533-0.9260134275983467j), (0.06524400837504042-0.13454878013256683j)),
        ((0.005981680780792891-0.1557541241386679j), (0.011660748777352613+0.11642614788183653j)),
        ((0.005981680780792891+0.1557541241386679j), (0.011660748777352613-0.11642614788183653j)),
        ((-0.004517608817307894+0.005263186004253792j), (-0.01741190814100568+0.08651021265634568j)),
        ((-0.004517608817307894-0.005263186004253792j), (-0.01741190814100568-0.08651021265634568j)),
        ((5.662066011847774e-05-3.0163323901473604e-05j), (-0.028581552460680233+0.057157148168748j)),
        ((5.662066011847774e-05+3.0163323901473604e-05j), (-0.028581552460680233-0.057157148168748j)),
    )),
    13: (-1.5132599545794847e-13, (
        ((14.32450321423403+0j), (0.18879641584952989+0j)),
        ((-6.06274247127816-8.694243101838623j), (0.1625645219881445+0.0775229937250259j)),
        ((-6.06274247127816+8.694243101838623j), (0.1625645219881445-0.0775229937250259j)),
        ((-1.3414264143858292+4.02842069456199j), (0.10314238725661697+0.11949065666016832j)),
        ((-1.3414264143858292-4.02842069456199j), (0.10314238725661697-0.11949065666016832j)),
        ((0.8195560015258081-0.32684736132157016j), (0.04426850737259371+0.12213331019601048j)),
        ((0.8195560015258081+0.32684736132157016j), (0.04426850737259371-0.12213331019601048j)),
        ((-0.07925946469116013-0.03327984878973808j), (0.0035992763413712626+0.1024906390921164j)),
        ((-0.07925946469116013+0.03327984878973808j), (0.0035992763413712626-0.1024906390921164j)),
        ((0.0016260478373405559+0.0026763433235756666j), (-0.01824624161353648+0.07641516336858212j)),
        ((0.0016260478373405559-0.0026763433235756666j), (-0.01824624161353648-0.07641516336858212j)),
        ((-5.306124859941957e-06-2.2847805708861364e-05j), (-0.026692415152307573+0.05146463300160744j)),
        ((-5.306124859941957e-06+2.2847805708861364e-05j), (-0.026692415152307573-0.05146463300160744j)),
    )),
    14: (6.190283114629444e-15, (
        ((8.434533000151959-16.374854123976395j), (0.1701627002356618+0.03613362432793164j)),
        ((8.434533000151959+16.374854123976395j), (0.1701627002356618-0.03613362432793164j)),
        ((-10.383324584805607+1.6467055698560704j), (0.13123257978931566+0.09253977843680396j)),
        ((-10.383324584805607-1.6467055698560704j), (0.13123257978931566-0.09253977843680396j)),
        ((2.475106604256477+2.26732725386025j), (0.07678865021919007+0.11546597486857235j)),
        ((2.475106604256477-2.26732725386025j), (0.07678865021919007-0.11546597486857235j)),
        ((0.0034831468194777074-0.5690498694290524j), (0.029573102728588967+0.11024646578823578j)),
        ((0.0034831468194777074+0.5690498694290524j), (0.029573102728588967-0.11024646578823578j)),
        ((-0.03113649293431644+0.0336508627995771j), (-0.0017271202926302603+0.09094881324798954j)),
        ((-0.03113649293431644-0.0336508627995771j), (-0.0017271202926302603-0.09094881324798954j)),
        ((0.0013468296356854694-0.0003259358251252758j), (-0.018496827407638267+0.06821024302607771j)),
        ((0.0013468296356854694+0.0003259358251252758j), (-0.018496827407638267-0.06821024302607771j)),
        ((-8.503123685995382e-06-2.4771685645014875e-07j), (-0.02501066140921403+0.04674792743334926j)),
        ((-8.503123685995382e-06+2.4771685645014875e-07j), (-0.02501066140921403-0.04674792743334926j)),
    )),
}

SUP_ERROR = {
    3: 0.0008010224982831552,
    4: 8.655698923166902e-05,
    5: 9.34799733749627e-06,
    6: 1.0084919333720364e-06,
    7: 1.0875251692092115e-07,
    8: 1.1722737961177444e-08,
    9: 1.2632980217475165e-09,
    10: 1.361138979305565e-10,
    11: 1.4666712289113093e-11,
    12: 1.5878409698188989e-12,
    13: 1.887445501070832e-13,
    14: 3.733573508950955e-14,
}
