// Generated by gen_gauss_reference.py (mpmath, 60 digits). Do not edit.

pub const CDF: &[(f64, f64)] = &[
    (-8.0, 6.220960574271784123515995e-16),
    (-7.75, 4.594627435778595460155455e-15),
    (-7.5, 3.190891672910896227767288e-14),
    (-7.25, 2.083858158672069431189998e-13),
    (-7.0, 1.279812543885835004383624e-12),
    (-6.75, 7.39225777801782241951623e-12),
    (-6.5, 4.016000583859117808346145e-11),
    (-6.25, 2.052263425218938881622764e-10),
    (-6.0, 9.865876450376981407008641e-10),
    (-5.75, 4.462172453901611873069223e-9),
    (-5.5, 1.898956246588771938385127e-8),
    (-5.25, 7.604960516488714251146065e-8),
    (-5.0, 2.866515718791939116737523e-7),
    (-4.75, 1.017083242568703171259182e-6),
    (-4.5, 3.397673124730060401687449e-6),
    (-4.25, 1.068852577493442046920056e-5),
    (-4.0, 3.167124183311992125377076e-5),
    (-3.75, 8.841728520080386781775467e-5),
    (-3.5, 2.326290790355250363499259e-4),
    (-3.25, 5.770250423907670429169193e-4),
    (-3.0, 1.349898031630094526651815e-3),
    (-2.75, 2.979763235054556754294247e-3),
    (-2.5, 6.209665325776135166978105e-3),
    (-2.25, 1.222447265504470315262393e-2),
    (-2.0, 2.275013194817920720028264e-2),
    (-1.75, 4.005915686381709041875735e-2),
    (-1.5, 6.680720126885806600449404e-2),
    (-1.25, 1.056497736668552576887728e-1),
    (-1.0, 1.586552539314570514147675e-1),
    (-0.75, 2.266273523768681993270622e-1),
    (-0.5, 3.085375387259868963622954e-1),
    (-0.25, 4.012936743170762757591462e-1),
    (0.0, 5.0e-1),
    (0.25, 5.987063256829237242408538e-1),
    (0.5, 6.914624612740131036377046e-1),
    (0.75, 7.733726476231318006729378e-1),
    (1.0, 8.413447460685429485852325e-1),
    (1.25, 8.943502263331447423112272e-1),
    (1.5, 9.33192798731141933995506e-1),
    (1.75, 9.599408431361829095812427e-1),
    (2.0, 9.772498680518207927997174e-1),
    (2.25, 9.877755273449552968473761e-1),
    (2.5, 9.937903346742238648330219e-1),
    (2.75, 9.970202367649454432457058e-1),
    (3.0, 9.986501019683699054733482e-1),
    (3.25, 9.994229749576092329570831e-1),
    (3.5, 9.997673709209644749636501e-1),
    (3.75, 9.999115827147991961321822e-1),
    (4.0, 9.999683287581668800787462e-1),
    (4.25, 9.999893114742250655795308e-1),
    (4.5, 9.999966023268752699395983e-1),
    (4.75, 9.999989829167574312968287e-1),
    (5.0, 9.999997133484281208060883e-1),
    (5.25, 9.999999239503948351128575e-1),
    (5.5, 9.999999810104375341122806e-1),
    (5.75, 9.999999955378275460983881e-1),
    (6.0, 9.999999990134123549623019e-1),
    (6.25, 9.999999997947736574781061e-1),
    (6.5, 9.999999999598399941614088e-1),
    (6.75, 9.999999999926077422219822e-1),
    (7.0, 9.999999999987201874561142e-1),
    (7.25, 9.999999999997916141841328e-1),
    (7.5, 9.999999999999680910832709e-1),
    (7.75, 9.999999999999954053725642e-1),
    (8.0, 9.999999999999993779039426e-1),
];

pub const MILLS: &[(f64, f64)] = &[
    (0.0, 1.253314137315500251207883),
    (0.25, 1.037824575853726812300365),
    (0.5, 8.763644564536923467278531e-1),
    (0.75, 7.525711790634080514554734e-1),
    (1.0, 6.556795424187984715438712e-1),
    (1.25, 5.784303460476310766336125e-1),
    (1.5, 5.158156382179633550265125e-1),
    (1.75, 4.643069280394421644372609e-1),
    (2.0, 4.213692292880544732249343e-1),
    (2.25, 3.851482907984346236393107e-1),
    (2.5, 3.542651113297936667839814e-1),
    (2.75, 3.276783146905520541612742e-1),
    (3.0, 3.045902987101032957336125e-1),
    (3.25, 2.843821467484929246828639e-1),
    (3.5, 2.665677689682237571523935e-1),
    (3.75, 2.507611114439650266300946e-1),
    (4.0, 2.366523829135606706239859e-1),
    (4.25, 2.239905946538288083204983e-1),
    (4.5, 2.1257058044203179022566e-1),
    (4.75, 2.022232366330546523535109e-1),
    (5.0, 1.928081047153157648774657e-1),
    (5.25, 1.842076773079701944917091e-1),
    (5.5, 1.763229857571027048806212e-1),
    (5.75, 1.690701504076940757836028e-1),
    (6.0, 1.623776608968674618156821e-1),
    (6.25, 1.561842150339759163311839e-1),
    (6.5, 1.504369887362690842840502e-1),
    (6.75, 1.450902412891309293562657e-1),
    (7.0, 1.401041834530502415995345e-1),
    (7.25, 1.354440530967634426311742e-1),
    (7.5, 1.310793558044917634883557e-1),
    (7.75, 1.269832374854369605907993e-1),
    (8.0, 1.231319632579322962821807e-1),
    (8.25, 1.195044823992529642286269e-1),
    (8.5, 1.160820633859822903388101e-1),
    (8.75, 1.128479863201030147643411e-1),
    (9.0, 1.097872825783082912306378e-1),
    (9.25, 1.068865135106744914102492e-1),
    (9.5, 1.041335815795982513083349e-1),
    (9.75, 1.01517568568102806249146e-1),
    (10.0, 9.902859647173192139533719e-2),
    (10.25, 9.665770747608191477822351e-2),
    (10.5, 9.439676005522438541654522e-2),
    (10.75, 9.223833873763033476928947e-2),
    (11.0, 9.017567550106468227978036e-2),
    (11.25, 8.820258109597614766531095e-2),
    (11.5, 8.631338487354935766250572e-2),
    (11.75, 8.450288192189575833118355e-2),
    (12.0, 8.276628650136917725226505e-2),
    (12.25, 8.109919092525537551179023e-2),
    (12.5, 7.949752916111721231316883e-2),
    (12.75, 7.795754453568719941621325e-2),
    (13.0, 7.647576101624850299349519e-2),
    (13.25, 7.504895761704657589147295e-2),
    (13.5, 7.367414554294562993847354e-2),
    (13.75, 7.234854773633337095712481e-2),
    (14.0, 7.106958053885210709059684e-2),
    (14.25, 6.983483721825940711416845e-2),
    (14.5, 6.864207314371742305605563e-2),
    (14.75, 6.748919242099968447265268e-2),
    (15.0, 6.637423582325017359132388e-2),
    (15.25, 6.529536987366382964017819e-2),
    (15.5, 6.425087695430572517907737e-2),
    (15.75, 6.323914633068607026982928e-2),
    (16.0, 6.225866599502619577668595e-2),
    (16.25, 6.130801524269381784263478e-2),
    (16.5, 6.038585790631232513840463e-2),
    (16.75, 5.949093618077611424855234e-2),
    (17.0, 5.862206498001594387545342e-2),
    (17.25, 5.77781267730105764677766e-2),
    (17.5, 5.695806685236580843970268e-2),
    (17.75, 5.616088899389183975228741e-2),
    (18.0, 5.538565147010073446724674e-2),
    (18.25, 5.463146338449947576908867e-2),
    (18.5, 5.389748129704106084400227e-2),
    (18.75, 5.318290611417650287150896e-2),
    (19.0, 5.24869802196763642368046e-2),
    (19.25, 5.18089848248062251024927e-2),
    (19.5, 5.114823751858488070012205e-2),
    (19.75, 5.050409000076043872859294e-2),
    (20.0, 4.987592598183678365824056e-2),
    (20.25, 4.926315923599620339837689e-2),
    (20.5, 4.866523179411517936521291e-2),
    (20.75, 4.808161226527845362373916e-2),
    (21.0, 4.751179427627811302655542e-2),
    (21.25, 4.695529501955408529514463e-2),
    (21.5, 4.64116539009028330649365e-2),
    (21.75, 4.588043127906330086730872e-2),
    (22.0, 4.536120728999310087585169e-2),
    (22.25, 4.485358074928212043099937e-2),
    (22.5, 4.435716812672277589372468e-2),
    (22.75, 4.387160258757270677119318e-2),
    (23.0, 4.339653309551270406429945e-2),
    (23.25, 4.293162357272531770283076e-2),
    (23.5, 4.247655211290251262712868e-2),
    (23.75, 4.203101024333804068549169e-2),
    (24.0, 4.159470223257550541965762e-2),
    (24.25, 4.11673444403696542170542e-2),
    (24.5, 4.074866470697911666306706e-2),
    (24.75, 4.033840177904618510070404e-2),
    (25.0, 3.99363047695355925287787e-2),
    (25.25, 3.954213264940162862951237e-2),
    (25.5, 3.915565376883317513923922e-2),
    (25.75, 3.877664540609097353283665e-2),
    (26.0, 3.840489334210212767982736e-2),
    (26.25, 3.804019145911480742143963e-2),
    (26.5, 3.768234136184253742755015e-2),
    (26.75, 3.733115201964339134260666e-2),
    (27.0, 3.698643942838581987515028e-2),
    (27.25, 3.664802629075058401497154e-2),
    (27.5, 3.631574171380811716514309e-2),
    (27.75, 3.598942092279330314339443e-2),
    (28.0, 3.566890499007576350256278e-2),
    (28.25, 3.53540405783938695536573e-2),
    (28.5, 3.504467969748534958468174e-2),
    (28.75, 3.474067947330701900049555e-2),
    (29.0, 3.44419019290912455875077e-2),
    (29.25, 3.414821377753765955782426e-2),
    (29.5, 3.3859486223485678724099e-2),
    (29.75, 3.357559477645696144124798e-2),
    (30.0, 3.32964190724972133818684e-2),
    (30.25, 3.302184270478412237444534e-2),
    (30.5, 3.2751753062502818559482e-2),
    (30.75, 3.248604117752237394327615e-2),
    (31.0, 3.222460157843666581242706e-2),
    (31.25, 3.196733215156061481577543e-2),
    (31.5, 3.171413400849853749817002e-2),
    (31.75, 3.146491135992527709487803e-2),
    (32.0, 3.121957139524303493775681e-2),
    (32.25, 3.097802416779754560260976e-2),
    (32.5, 3.074018248535653897782098e-2),
    (32.75, 3.050596180557141907836572e-2),
    (33.0, 3.027528013615986114464385e-2),
    (33.25, 3.004805793956267577562215e-2),
    (33.5, 2.982421804184289463194736e-2),
    (33.75, 2.960368554560867299156049e-2),
    (34.0, 2.938638774675435041968306e-2),
    (34.25, 2.917225405482592671522334e-2),
    (34.5, 2.896121591682835570171141e-2),
    (34.75, 2.875320674430248926027715e-2),
    (35.0, 2.854816184350926890054617e-2),
    (35.25, 2.834601834856790886608545e-2),
    (35.5, 2.814671515740338642257469e-2),
    (35.75, 2.795019287036659144026764e-2),
    (36.0, 2.775639373139802550240243e-2),
    (36.25, 2.756526157161301462378098e-2),
    (36.5, 2.73767417551930407807493e-2),
    (36.75, 2.719078112747403502909873e-2),
    (37.0, 2.700732796512833606337615e-2),
    (37.25, 2.682633192834252771425668e-2),
    (37.5, 2.664774401489855033243635e-2),
    (37.75, 2.647151651607035583176715e-2),
    (38.0, 2.629760297425296437758412e-2),
    (38.25, 2.612595814224510089780716e-2),
    (38.5, 2.595653794411065903702119e-2),
    (38.75, 2.578929943754807492412244e-2),
    (39.0, 2.562420077770030811593869e-2),
    (39.25, 2.546120118234153620815941e-2),
    (39.5, 2.530026089837988580678597e-2),
    (39.75, 2.514134116961855787596606e-2),
    (40.0, 2.498440420572057114738839e-2),
];

pub const UPPER_TAIL: &[(f64, f64)] = &[
    (10.0, 7.619853024160526065973343e-24),
    (15.0, 3.67096619931275088578609e-51),
    (20.0, 2.753624118606233695075623e-89),
    (25.0, 3.056696706382560916402749e-138),
    (30.0, 4.906713927148187059533809e-198),
    (35.0, 1.124910706472406243979243e-268),
    (37.0, 5.725571222524576822683193e-300),
];
